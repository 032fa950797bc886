//! Argument parsing and dispatch for the `raag` binary.

pub mod output;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use raag_core::constructions::free_subgroup::{self, Trace};
use raag_core::constructions::lattice::{self, GraphOfGroups};
use raag_core::extension::{self, ExtVertex};
use raag_core::parabolic::{self, Parabolic};
use raag_core::roller::{self, Hyperplane};
use raag_core::suites::{self, Budget};
use raag_core::word::{self, GroupElement};
use raag_core::{Graph, VertexSet};

use output::*;

#[derive(Debug, Parser)]
#[command(name = "raag", version, about = "Computations in right-angled Artin groups")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GraphArg {
    /// Graph file: a `vertices:` line and `edges:` lines of `u-v` tokens.
    #[arg(short = 'g', long = "graph")]
    pub graph: PathBuf,
}

#[derive(Debug, Args)]
pub struct GogArg {
    /// Graph-of-groups file.
    #[arg(long, required_unless_present = "family")]
    pub gog: Option<PathBuf>,

    /// Use the built-in 4-valent family instead of a file.
    #[arg(long, conflicts_with = "gog")]
    pub family: bool,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    pub x_base: String,
    pub x_rep: String,
    pub y_base: String,
    pub y_rep: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of a word.
    Nf {
        #[command(flatten)]
        g: GraphArg,
        word: String,
    },
    /// Normal form of a product.
    Mul {
        #[command(flatten)]
        g: GraphArg,
        x: String,
        y: String,
    },
    /// Smallest parabolic subgroup containing an element.
    Support {
        #[command(flatten)]
        g: GraphArg,
        word: String,
    },
    /// Centralizer of the cyclic parabolic subgroup supporting an element.
    Centralizer {
        #[command(flatten)]
        g: GraphArg,
        word: String,
    },
    /// Join decomposition and the finite-Out criterion.
    GraphCheck {
        #[command(flatten)]
        g: GraphArg,
    },
    /// Ball of the extension graph, by conjugator length.
    ExtBall {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long, default_value_t = 1)]
        radius: usize,
        /// Print DOT instead of text.
        #[arg(long)]
        dot: bool,
    },
    /// Whether two vertices `(base, rep)` of the extension graph are adjacent.
    ExtAdjacent {
        #[command(flatten)]
        g: GraphArg,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Vertices fixed by the common stabilizer of two extension graph vertices.
    FixpointScan {
        #[command(flatten)]
        g: GraphArg,
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// Classify the ray `prefix · period^∞`.
    RayClassify {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long, default_value = "")]
        prefix: String,
        #[arg(long)]
        period: String,
        /// Number of periods checked for geodesicity (default 2|V| + 2).
        #[arg(long)]
        k_check: Option<usize>,
    },
    /// Hyperplanes crossed by a geodesic word, with their crossings.
    Hyperplanes {
        #[command(flatten)]
        g: GraphArg,
        word: String,
    },
    /// Build and verify a free subgroup with full support.
    FreeFullSupport {
        #[command(flatten)]
        g: GraphArg,
        /// Syllable length for the support check.
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Partial sums of the Serre covolume series.
    LatticeCovolume {
        #[command(flatten)]
        gog: GogArg,
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// Valence of the Bass-Serre tree at every vertex.
    GogValidate {
        #[command(flatten)]
        gog: GogArg,
        #[arg(long, default_value_t = 4)]
        valence: u64,
        #[arg(long, default_value_t = 2)]
        per_label: u64,
        /// How far to unroll a parametric tail.
        #[arg(long, default_value_t = lattice::DEFAULT_TAIL_DEPTH)]
        depth: usize,
    },
    /// Run the oracle suites.
    Selftest {
        /// Random words per graph where exhaustive enumeration is too large.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        /// Run a single criterion.
        #[arg(long)]
        only: Option<usize>,
    },
}

/// The result of a command: both renderings, and whether a check failed.
pub struct Rendered {
    pub text: String,
    pub json: String,
    pub failed: bool,
}

impl Rendered {
    fn new<T: Serialize>(value: &T, text: String) -> Self {
        Self::check(value, text, false)
    }

    fn check<T: Serialize>(value: &T, text: String, failed: bool) -> Self {
        Rendered {
            text,
            json: serde_json::to_string_pretty(value).expect("serializable"),
            failed,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_graph(arg: &GraphArg) -> Result<Graph> {
    let text = read(&arg.graph)?;
    Graph::parse(&text).with_context(|| format!("in {}", arg.graph.display()))
}

fn load_gog(arg: &GogArg) -> Result<GraphOfGroups> {
    match &arg.gog {
        Some(path) => Ok(GraphOfGroups::parse(&read(path)?).with_context(|| format!("in {}", path.display()))?),
        None => Ok(lattice::four_valent_family()),
    }
}

fn element(g: &Graph, s: &str) -> Result<GroupElement> {
    word::parse_element(g, s).with_context(|| format!("in word `{s}`"))
}

fn names(g: &Graph, s: VertexSet) -> Vec<String> {
    s.iter().map(|v| g.name(v).to_string()).collect()
}

fn fmt(g: &Graph, x: &GroupElement) -> String {
    word::format_element(g, x)
}

fn parabolic_out(g: &Graph, p: &Parabolic) -> ParabolicOut {
    ParabolicOut {
        ptype: names(g, p.ptype()),
        rep: fmt(g, p.rep()),
    }
}

fn ext_out(g: &Graph, x: &ExtVertex) -> ExtVertexOut {
    ExtVertexOut {
        base: g.name(x.base()).to_string(),
        rep: fmt(g, x.rep()),
    }
}

fn ext_vertex(g: &Graph, base: &str, rep: &str) -> Result<ExtVertex> {
    Ok(extension::ext_vertex(g, g.vertex(base)?, &element(g, rep)?)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

pub fn execute(cli: &Cli) -> Result<Rendered> {
    Ok(match &cli.command {
        Command::Nf { g, word } => {
            let g = load_graph(g)?;
            let x = element(&g, word)?;
            let out = ElementOut {
                normal_form: fmt(&g, &x),
                length: x.len(),
            };
            let text = out.normal_form.clone();
            Rendered::new(&out, text)
        }
        Command::Mul { g, x, y } => {
            let g = load_graph(g)?;
            let p = word::multiply(&g, &element(&g, x)?, &element(&g, y)?)?;
            let out = ElementOut {
                normal_form: fmt(&g, &p),
                length: p.len(),
            };
            let text = out.normal_form.clone();
            Rendered::new(&out, text)
        }
        Command::Support { g, word: w } => {
            let g = load_graph(g)?;
            let x = element(&g, w)?;
            let s = word::cyclic_reduce(&g, &x);
            let p = parabolic::make_parabolic(&g, s.core_letters, &s.conjugator);
            let out = SupportOut {
                conjugator: fmt(&g, &s.conjugator),
                core: fmt(&g, &s.core),
                support: parabolic_out(&g, &p),
            };
            let text = format!(
                "{}\nconjugator \"{}\", core \"{}\"",
                p.display(&g),
                out.conjugator,
                out.core
            );
            Rendered::new(&out, text)
        }
        Command::Centralizer { g, word: w } => {
            let g = load_graph(g)?;
            let x = element(&g, w)?;
            let s = word::cyclic_reduce(&g, &x);
            let z = parabolic::make_parabolic(&g, s.core_letters, &s.conjugator);
            let c = parabolic::centralizer_of_cyclic(&g, &z)?;
            Rendered::new(&parabolic_out(&g, &c), c.display(&g))
        }
        Command::GraphCheck { g } => {
            let g = load_graph(g)?;
            let t = g.transvection_check();
            let sep = g.separating_star_check().ok();
            let d = g.de_rham(g.vertices())?;
            let out = GraphCheckOut {
                vertices: g.vertex_count(),
                edges: g.edge_count(),
                connected: g.is_connected(),
                transvection_free: t.transvection_free,
                transvection_witness: t.witness.map(|(v, w)| (g.name(v).to_string(), g.name(w).to_string())),
                separating_star: sep.map(|s| s.has_separating_star),
                separating_star_vertex: sep.and_then(|s| s.witness).map(|v| g.name(v).to_string()),
                finite_out: g.finite_out().ok(),
                clique_factor: names(&g, d.clique_factor),
                irreducible_factors: d.irreducible_factors.iter().map(|&f| names(&g, f)).collect(),
            };
            let n = d.irreducible_factors.len();
            let mut text = format!("transvection-free: {}", yes_no(t.transvection_free));
            if let Some((v, w)) = &out.transvection_witness {
                text += &format!(" (lk({w}) in st({v}))");
            }
            match out.separating_star {
                Some(b) => text += &format!("\nseparating-star: {}", yes_no(b)),
                None => text += "\nseparating-star: n/a (disconnected)",
            }
            if let Some(v) = &out.separating_star_vertex {
                text += &format!(" (st({v}))");
            }
            match out.finite_out {
                Some(b) => text += &format!("\nfinite-out: {}", yes_no(b)),
                None => text += "\nfinite-out: n/a (disconnected)",
            }
            text += &format!(
                "\nde-rham: {n} irreducible factor{}",
                if n == 1 { "" } else { "s" }
            );
            for f in &d.irreducible_factors {
                text += &format!(" {}", g.format_set(*f));
            }
            if !d.clique_factor.is_empty() {
                text += &format!(", clique factor {}", g.format_set(d.clique_factor));
            }
            Rendered::new(&out, text)
        }
        Command::ExtBall { g, radius, dot } => {
            let g = load_graph(g)?;
            let b = extension::ext_ball(&g, *radius)?;
            let out = ExtBallOut {
                radius: *radius,
                vertices: b.vertices.iter().map(|x| ext_out(&g, x)).collect(),
                edges: b.edges.clone(),
            };
            let text = if *dot {
                b.to_dot(&g).trim_end().to_string()
            } else {
                let mut t = format!("{} vertices, {} edges", b.vertices.len(), b.edges.len());
                for (i, x) in b.vertices.iter().enumerate() {
                    t += &format!("\n{i}: {}", x.display(&g));
                }
                for (i, j) in &b.edges {
                    t += &format!("\n{i} -- {j}");
                }
                t
            };
            Rendered::new(&out, text)
        }
        Command::ExtAdjacent { g, pair } => {
            let g = load_graph(g)?;
            let x = ext_vertex(&g, &pair.x_base, &pair.x_rep)?;
            let y = ext_vertex(&g, &pair.y_base, &pair.y_rep)?;
            let adjacent = extension::ext_adjacent(&g, &x, &y);
            let out = ExtAdjacentOut {
                x: ext_out(&g, &x),
                y: ext_out(&g, &y),
                adjacent,
            };
            Rendered::new(&out, yes_no(adjacent).to_string())
        }
        Command::FixpointScan { g, pair, radius } => {
            let g = load_graph(g)?;
            let x = ext_vertex(&g, &pair.x_base, &pair.x_rep)?;
            let y = ext_vertex(&g, &pair.y_base, &pair.y_rep)?;
            let scan = extension::common_fixed_vertices(&g, &x, &y, *radius)?;
            let out = FixpointOut {
                radius: *radius,
                count: scan.vertices.len(),
                complete: scan.complete,
                stabilizer_generators: scan.stabilizer_generators.iter().map(|h| fmt(&g, h)).collect(),
                vertices: scan.vertices.iter().map(|u| ext_out(&g, u)).collect(),
            };
            let mut text = format!(
                "{} fixed vertices at radius {radius}{}",
                out.count,
                if scan.complete { "" } else { " (stabilizer from bounded search)" }
            );
            for u in &scan.vertices {
                text += &format!("\n{}", u.display(&g));
            }
            Rendered::new(&out, text)
        }
        Command::RayClassify {
            g,
            prefix,
            period,
            k_check,
        } => {
            let g = load_graph(g)?;
            let prefix = word::parse_word(&g, prefix)?;
            let period = word::parse_word(&g, period)?;
            let k = k_check.unwrap_or_else(|| roller::default_k_check(&g));
            let ray = roller::validate_ray(&g, &prefix, &period, k)?;
            let c = roller::classify_ray(&g, &ray);
            let out = RayOut {
                regular: c.regular,
                phi_type: names(&g, c.phi.stype),
                phi_rep: fmt(&g, &c.phi.rep),
                checked_to: ray.checked_to(),
            };
            let text = format!(
                "{}, phi type {}, rep \"{}\"",
                if c.regular { "regular" } else { "non-regular" },
                g.format_set(c.phi.stype),
                out.phi_rep
            );
            Rendered::new(&out, text)
        }
        Command::Hyperplanes { g, word: w } => {
            let g = load_graph(g)?;
            let w = word::parse_word(&g, w)?;
            let hs = roller::hyperplanes_crossed(&g, &w)?;
            let mut crossings = Vec::new();
            for i in 0..hs.len() {
                for j in i + 1..hs.len() {
                    if roller::crosses(&g, &hs[i], &hs[j])? {
                        crossings.push((i, j));
                    }
                }
            }
            let out = HyperplanesOut {
                hyperplanes: hs
                    .iter()
                    .map(|h: &Hyperplane| HyperplaneOut {
                        label: g.name(h.label()).to_string(),
                        coset_rep: fmt(&g, h.coset_rep()),
                    })
                    .collect(),
                crossings,
            };
            let mut text: Vec<String> = hs.iter().enumerate().map(|(i, h)| format!("{i}: {}", h.display(&g))).collect();
            for (i, j) in &out.crossings {
                text.push(format!("{i} crosses {j}"));
            }
            Rendered::new(&out, text.join("\n"))
        }
        Command::FreeFullSupport { g, max_len } => {
            let g = load_graph(g)?;
            let wit = free_subgroup::full_support_free(&g)?;
            let local = free_subgroup::verify_local_isometry(&g, &wit)?;
            let report = free_subgroup::verify_full_support(&g, &wit, *max_len);
            let (u0, v0) = match wit.trace() {
                Some(Trace::Complement { u0, v0, .. }) => (Some(g.name(*u0).to_string()), Some(g.name(*v0).to_string())),
                _ => (None, None),
            };
            let out = FreeOut {
                w1: fmt(&g, wit.w1()),
                w2: fmt(&g, wit.w2()),
                diagonal: wit.is_diagonal(),
                u0,
                v0,
                local_isometry: local,
                max_syllables: *max_len,
                words_checked: report.checked,
                failures: report.failures.clone(),
            };
            let text = format!(
                "W1 = {}\nW2 = {}\nconstruction: {}\nlocal isometry: {}\nfull support: {} of {} products failed",
                out.w1,
                out.w2,
                match (&out.u0, &out.v0) {
                    (Some(u), Some(v)) => format!("complement paths, u0 = {u}, v0 = {v}"),
                    _ => "diagonal over join factors".to_string(),
                },
                yes_no(local),
                report.failures.len(),
                report.checked
            );
            Rendered::check(&out, text, !local || !report.passed())
        }
        Command::LatticeCovolume { gog, terms } => {
            let gog = load_gog(gog)?;
            let r = lattice::serre_covolume(&gog, *terms)?;
            let out = CovolumeOut {
                partial_sums: r.partial_sums.iter().map(lattice::format_rational).collect(),
                converged: r.converged,
                closed_form: r.closed_form.as_ref().map(lattice::format_rational),
            };
            let text = format!(
                "partial sums: {}\nconverged: {}\nclosed form: {}",
                out.partial_sums.join(" "),
                yes_no(out.converged),
                out.closed_form.as_deref().unwrap_or("none")
            );
            Rendered::new(&out, text)
        }
        Command::GogValidate {
            gog,
            valence,
            per_label,
            depth,
        } => {
            let gog = load_gog(gog)?;
            let r = lattice::validate_bass_serre_valence_to_depth(&gog, *valence, *per_label, *depth)?;
            let out = ValenceOut {
                passed: r.passed(),
                skipped: r.skipped.clone(),
                vertices: r
                    .vertices
                    .iter()
                    .map(|v| VertexValenceOut {
                        id: v.id.clone(),
                        a: v.per_label[0],
                        b: v.per_label[1],
                        total: v.total,
                        passed: v.passed,
                    })
                    .collect(),
            };
            let mut text: Vec<String> = out
                .vertices
                .iter()
                .map(|v| {
                    format!(
                        "{} a={} b={} total={} {}",
                        v.id,
                        v.a,
                        v.b,
                        v.total,
                        if v.passed { "ok" } else { "FAIL" }
                    )
                })
                .collect();
            if let Some(s) = &out.skipped {
                text.push(format!("{s} skipped (frontier)"));
            }
            text.push(format!("valence check: {}", if out.passed { "passed" } else { "failed" }));
            Rendered::check(&out, text.join("\n"), !out.passed)
        }
        Command::Selftest { budget, only } => {
            let b = Budget {
                random_words: *budget,
                ..Budget::default()
            };
            let ids: Vec<usize> = match only {
                Some(i) if (1..=suites::NAMES.len()).contains(i) => vec![*i],
                Some(i) => bail!("no criterion {i}; expected 1..={}", suites::NAMES.len()),
                None => (1..=suites::NAMES.len()).collect(),
            };
            let outcomes: Vec<_> = ids.into_iter().map(|i| suites::run(i, &b)).collect();
            let out = SelftestOut {
                passed: outcomes.iter().all(|o| o.passed),
                criteria: outcomes
                    .iter()
                    .map(|o| CriterionOut {
                        id: o.id,
                        name: o.name.to_string(),
                        passed: o.passed,
                        detail: o.detail.clone(),
                        millis: o.elapsed.as_millis() as u64,
                    })
                    .collect(),
            };
            let text = outcomes.iter().map(|o| o.line()).collect::<Vec<_>>().join("\n");
            let failed = !out.passed;
            Rendered::check(&out, text, failed)
        }
    })
}
