use proptest::prelude::*;

use raag_core::constructions::lattice::{validate_bass_serre_valence, GraphOfGroups};
use raag_core::constructions::serre_covolume;
use raag_core::extension::{ext_adjacent, ext_vertex, translate};
use raag_core::parabolic::{self, make_parabolic};
use raag_core::roller::{self, validate_ray};
use raag_core::word::{self, cyclic_reduce, gate_right, reduce};
use raag_core::{Graph, GroupElement, Letter, VertexSet, Word};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            Graph::new(names, edges).unwrap()
        })
    })
}

fn raw_word(max_len: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
    proptest::collection::vec((0usize..64, any::<bool>()), 0..=max_len)
}

fn word_in(g: &Graph, raw: &[(usize, bool)]) -> Word {
    raw.iter()
        .map(|&(v, inv)| Letter::new(v % g.vertex_count(), inv))
        .collect()
}

fn el(g: &Graph, raw: &[(usize, bool)]) -> GroupElement {
    reduce(g, &word_in(g, raw)).unwrap()
}

fn set_in(g: &Graph, bits: u64) -> VertexSet {
    VertexSet::from_bits(bits & g.vertices().bits())
}

fn c5() -> Graph {
    Graph::cycle(5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn multiplication_is_associative(g in graph_strategy(6), a in raw_word(8), b in raw_word(8), c in raw_word(8)) {
        let (a, b, c) = (el(&g, &a), el(&g, &b), el(&g, &c));
        let ab_c = word::multiply(&g, &word::multiply(&g, &a, &b).unwrap(), &c).unwrap();
        let a_bc = word::multiply(&g, &a, &word::multiply(&g, &b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn inverse_is_an_involution(g in graph_strategy(6), a in raw_word(10)) {
        let x = el(&g, &a);
        let xi = word::invert(&g, &x);
        prop_assert_eq!(&word::invert(&g, &xi), &x);
        prop_assert!(word::multiply(&g, &x, &xi).unwrap().is_identity());
    }

    #[test]
    fn reduction_is_idempotent_and_geodesic(g in graph_strategy(6), a in raw_word(12)) {
        let w = word_in(&g, &a);
        let x = reduce(&g, &w).unwrap();
        prop_assert!(x.len() <= w.len());
        prop_assert_eq!(&reduce(&g, x.word()).unwrap(), &x);
        prop_assert!(word::is_geodesic(&g, x.word()));
        prop_assert_eq!(word::is_geodesic(&g, &w), x.len() == w.len());
    }

    #[test]
    fn gate_is_independent_of_strip_order(g in graph_strategy(6), a in raw_word(10), bits in any::<u64>(), picks in proptest::collection::vec(any::<usize>(), 12)) {
        let s = set_in(&g, bits);
        let x = el(&g, &a);
        // strip right divisors in s in an arbitrary order
        let mut letters = x.letters().to_vec();
        let mut round = 0;
        loop {
            let strippable: Vec<usize> = (0..letters.len())
                .filter(|&i| {
                    let v = letters[i].generator();
                    s.contains(v)
                        && letters[i + 1..]
                            .iter()
                            .all(|l| l.generator() != v && g.adjacent(l.generator(), v))
                })
                .collect();
            if strippable.is_empty() {
                break;
            }
            let i = strippable[picks[round % picks.len()] % strippable.len()];
            letters.remove(i);
            round += 1;
        }
        let randomized = reduce(&g, &Word::from_letters(letters)).unwrap();
        prop_assert_eq!(&gate_right(&g, &x, s), &randomized);
    }

    #[test]
    fn gate_is_a_coset_invariant(g in graph_strategy(6), a in raw_word(8), k in raw_word(8), bits in any::<u64>()) {
        let s = set_in(&g, bits);
        let x = el(&g, &a);
        let kw: Vec<(usize, bool)> = k.into_iter().map(|(v, i)| (v % g.vertex_count(), i)).filter(|&(v, _)| s.contains(v)).collect();
        let k = el(&g, &kw);
        let xk = word::multiply(&g, &x, &k).unwrap();
        let gx = gate_right(&g, &x, s);
        prop_assert_eq!(&gate_right(&g, &xk, s), &gx);
        prop_assert!(gx.len() <= x.len());
        let rest = word::multiply(&g, &word::invert(&g, &gx), &x).unwrap();
        prop_assert!(word::member_of_standard(&rest, s));
    }

    #[test]
    fn cyclic_reduction_reassembles(g in graph_strategy(6), a in raw_word(12)) {
        let x = el(&g, &a);
        let s = cyclic_reduce(&g, &x);
        prop_assert_eq!(&word::conjugate(&g, &s.conjugator, &s.core), &x);
        prop_assert!(parabolic::member(&g, &make_parabolic(&g, s.core_letters, &s.conjugator), &x));
        // conjugation moves the support but not its type
        let y = word::conjugate(&g, &el(&g, &a[..a.len() / 2]), &x);
        prop_assert_eq!(cyclic_reduce(&g, &y).core_letters, s.core_letters);
    }

    #[test]
    fn triple_perp(g in graph_strategy(7), bits in any::<u64>()) {
        let s = set_in(&g, bits);
        let p = g.perp(s).unwrap();
        prop_assert_eq!(g.perp(g.perp(p).unwrap()).unwrap(), p);
        prop_assert!(s.is_subset(g.perp(p).unwrap()));
    }

    #[test]
    fn de_rham_is_a_join_decomposition(g in graph_strategy(7), bits in any::<u64>()) {
        let s = set_in(&g, bits | 1);
        let d = g.de_rham(s).unwrap();
        let mut pieces = d.irreducible_factors.clone();
        if !d.clique_factor.is_empty() {
            pieces.push(d.clique_factor);
        }
        let union = pieces.iter().fold(VertexSet::EMPTY, |u, &p| u.union(p));
        prop_assert_eq!(union, s);
        prop_assert_eq!(pieces.iter().map(|p| p.len()).sum::<usize>(), s.len());
        for (i, &p) in pieces.iter().enumerate() {
            for &q in &pieces[i + 1..] {
                for u in p.iter() {
                    prop_assert!(g.perp(q).unwrap().contains(u));
                }
            }
        }
        for f in &d.irreducible_factors {
            prop_assert!(f.len() >= 2);
            prop_assert_eq!(g.complement_components(*f).len(), 1);
        }
        for u in d.clique_factor.iter() {
            prop_assert!(s.difference(VertexSet::singleton(u)).is_subset(g.star(u).unwrap()));
        }
    }

    #[test]
    fn parabolic_canonicalization(g in graph_strategy(6), bits in any::<u64>(), c in raw_word(8), h in raw_word(8)) {
        let t = set_in(&g, bits);
        let (c, h) = (el(&g, &c), el(&g, &h));
        let p = make_parabolic(&g, t, &c);
        prop_assert_eq!(&make_parabolic(&g, t, p.rep()), &p);
        let hc = word::multiply(&g, &h, &c).unwrap();
        prop_assert_eq!(parabolic::conjugate(&g, &h, &p), make_parabolic(&g, t, &hc));
        let n = parabolic::normalizer(&g, &p);
        prop_assert!(parabolic::contains(&g, &n, &p));
    }

    #[test]
    fn extension_adjacency_is_translation_invariant(a in raw_word(5), b in raw_word(5), h in raw_word(6), u in 0usize..5, v in 0usize..5) {
        let g = c5();
        let x = ext_vertex(&g, u, &el(&g, &a)).unwrap();
        let y = ext_vertex(&g, v, &el(&g, &b)).unwrap();
        let h = el(&g, &h);
        let (hx, hy) = (translate(&g, &h, &x), translate(&g, &h, &y));
        prop_assert_eq!(ext_adjacent(&g, &x, &y), ext_adjacent(&g, &hx, &hy));
        prop_assert_eq!(hx.generator(&g), word::conjugate(&g, &h, &x.generator(&g)));
    }

    #[test]
    fn extension_dedup_is_sound(a in raw_word(5), b in raw_word(5), u in 0usize..5) {
        let g = c5();
        let (ca, cb) = (el(&g, &a), el(&g, &b));
        let x = ext_vertex(&g, u, &ca).unwrap();
        let y = ext_vertex(&g, u, &cb).unwrap();
        prop_assert_eq!(x == y, x.generator(&g) == y.generator(&g));
    }

    #[test]
    fn rays_stay_geodesic_past_the_check(g in graph_strategy(5), p in raw_word(3), q in proptest::collection::vec((0usize..64, any::<bool>()), 1..=4)) {
        let (prefix, period) = (word_in(&g, &p), word_in(&g, &q));
        let k = roller::default_k_check(&g);
        if let Ok(r) = validate_ray(&g, &prefix, &period, k) {
            prop_assert!(validate_ray(&g, &prefix, &period, k + 4).is_ok());
            let class = roller::classify_ray(&g, &r);
            prop_assert_eq!(class.phi.stype, period.support());
            prop_assert!(roller::phi_subray_invariance(&g, &r, 3).passed);
        }
    }

    #[test]
    fn geodesics_cross_distinct_hyperplanes(g in graph_strategy(5), a in raw_word(8)) {
        let w = word_in(&g, &a);
        let hs = roller::edge_path_hyperplanes(&g, &w);
        let distinct = hs.iter().collect::<std::collections::HashSet<_>>().len() == hs.len();
        prop_assert_eq!(word::is_geodesic(&g, &w), distinct);
    }

    #[test]
    fn valence_is_invariant_under_relabeling(orders in proptest::collection::vec(1u32..4, 2..5), edges in proptest::collection::vec((0usize..5, 0usize..5, any::<bool>(), 0u32..3), 0..6), shift in 1usize..7) {
        let n = orders.len();
        let text = |name: &dyn Fn(usize) -> String| {
            let mut s = String::new();
            for (i, o) in orders.iter().enumerate() {
                s += &format!("gvertex {} 2^{}\n", name(i), o);
            }
            for &(x, y, l, e) in &edges {
                let (x, y) = (x % n, y % n);
                let e = e.min(orders[x]).min(orders[y]);
                s += &format!("gedge {} {} {} 2^{}\n", name(x), name(y), if l { "a" } else { "b" }, e);
            }
            s
        };
        let plain = GraphOfGroups::parse(&text(&|i| format!("v{i}"))).unwrap();
        let renamed = GraphOfGroups::parse(&text(&|i| format!("w{}", (i + shift) * 7))).unwrap();
        let r1 = validate_bass_serre_valence(&plain, 4, 2).unwrap();
        let r2 = validate_bass_serre_valence(&renamed, 4, 2).unwrap();
        let strip = |r: &raag_core::constructions::lattice::ValenceReport| {
            r.vertices.iter().map(|v| (v.per_label, v.passed)).collect::<Vec<_>>()
        };
        prop_assert_eq!(strip(&r1), strip(&r2));
        prop_assert_eq!(serre_covolume(&plain, 1).unwrap(), serre_covolume(&renamed, 1).unwrap());
    }

    #[test]
    fn covolume_partial_sums_are_monotone(c in 1u32..5, r in 1u32..4, terms in 1usize..20, caps in any::<bool>()) {
        let gog = GraphOfGroups::parse(&format!("gvertex x 3\ntail ab {c}*{r}^k{}", if caps { " caps" } else { "" })).unwrap();
        let rep = serre_covolume(&gog, terms).unwrap();
        prop_assert_eq!(rep.partial_sums.len(), terms + 1);
        prop_assert!(rep.partial_sums.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(rep.converged, r > 1);
        if let Some(limit) = rep.closed_form {
            prop_assert!(rep.partial_sums.iter().all(|s| *s < limit));
        }
    }
}
