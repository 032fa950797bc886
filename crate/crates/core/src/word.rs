//! Exact arithmetic in `G_Γ`.
//!
//! A [`Word`] is any sequence of signed generators. A [`GroupElement`] holds
//! the canonical normal form of its element: the word is reduced (no `s … s⁻¹`
//! pair whose intermediate letters all commute with `s`) and is the
//! lexicographically least reduced word in its shuffle class, comparing
//! generators by graph order and `s < s⁻¹` at equal generators.
//!
//! Everything here is built on two primitives over reduced words: appending a
//! letter (cancel against the last occurrence of its generator if everything
//! after it commutes) and peeling letters off either end (a letter sits at the
//! front, resp. back, of some shuffle iff it commutes with every letter before,
//! resp. after, it).

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A signed generator, packed as `generator << 1 | inverse`.
///
/// The derived ordering is the normal-form ordering: by generator, then `s < s⁻¹`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u16);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        debug_assert!(generator < 1 << 15);
        Letter((generator as u16) << 1 | inverse as u16)
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    #[inline]
    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "{}^-1", self.generator())
        } else {
            write!(f, "{}", self.generator())
        }
    }
}

/// An arbitrary word over signed generators.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    /// Formal inverse: reversed, every letter inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// Set of generators occurring in the word.
    pub fn support(&self) -> VertexSet {
        let mut bits = 0u64;
        for l in &self.0 {
            bits |= 1 << l.generator();
        }
        VertexSet::from_bits(bits)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// An element of `G_Γ` in canonical normal form.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Word);

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement(Word::new())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn letters(&self) -> &[Letter] {
        self.0.letters()
    }

    /// Word length, which is also the distance from the identity in the Cayley graph.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Generators occurring in the normal form (invariant across reduced representatives).
    pub fn letter_set(&self) -> VertexSet {
        self.0.support()
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({:?})", self.0)
    }
}

/// Element written as `conjugator · core · conjugator⁻¹` with a cyclically reduced core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportResult {
    pub conjugator: GroupElement,
    pub core: GroupElement,
    /// Type of the smallest parabolic subgroup containing the element.
    pub core_letters: VertexSet,
}

/// Appends `x` to a reduced word, keeping it reduced. Returns `true` on cancellation.
#[inline]
fn push_reduced(g: &Graph, out: &mut Vec<Letter>, x: Letter) -> bool {
    let s = x.generator();
    let lk = g.adj_mask(s);
    for i in (0..out.len()).rev() {
        let y = out[i];
        if y.generator() == s {
            if y == x.inverse() {
                out.remove(i);
                return true;
            }
            break;
        }
        if lk >> y.generator() & 1 == 0 {
            break;
        }
    }
    out.push(x);
    false
}

/// Lexicographically least word in the shuffle class of a reduced word.
fn canonical(g: &Graph, mut remaining: Vec<Letter>) -> Vec<Letter> {
    let mut out = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let mut seen = 0u64;
        let mut best: Option<usize> = None;
        for (i, &l) in remaining.iter().enumerate() {
            let s = l.generator();
            if seen & !g.adj_mask(s) == 0 && best.is_none_or(|b| l < remaining[b]) {
                best = Some(i);
            }
            seen |= 1 << s;
        }
        let b = best.expect("the first remaining letter is always available");
        out.push(remaining.remove(b));
    }
    out
}

fn check_letters(g: &Graph, letters: &[Letter]) -> Result<()> {
    match letters.iter().find(|l| l.generator() >= g.vertex_count()) {
        Some(l) => Err(Error::InvalidLetter(l.generator())),
        None => Ok(()),
    }
}

pub(crate) fn reduce_letters(g: &Graph, letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out = Vec::new();
    for x in letters {
        push_reduced(g, &mut out, x);
    }
    out
}

pub(crate) fn element_from_reduced(g: &Graph, reduced: Vec<Letter>) -> GroupElement {
    GroupElement(Word(canonical(g, reduced)))
}

/// `reduce` without the letter range check.
pub(crate) fn reduce_unchecked(g: &Graph, letters: &[Letter]) -> GroupElement {
    element_from_reduced(g, reduce_letters(g, letters.iter().copied()))
}

/// Canonical normal form of `w`.
pub fn reduce(g: &Graph, w: &Word) -> Result<GroupElement> {
    check_letters(g, w.letters())?;
    Ok(reduce_unchecked(g, w.letters()))
}

pub fn generator(g: &Graph, v: usize) -> Result<GroupElement> {
    if v >= g.vertex_count() {
        return Err(Error::InvalidLetter(v));
    }
    Ok(GroupElement(Word(vec![Letter::pos(v)])))
}

pub(crate) fn mul(g: &Graph, x: &GroupElement, y: &GroupElement) -> GroupElement {
    let mut out = x.letters().to_vec();
    for &l in y.letters() {
        push_reduced(g, &mut out, l);
    }
    element_from_reduced(g, out)
}

/// Product of several elements, left to right.
pub(crate) fn mul_all<'a>(g: &Graph, xs: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
    let mut out = Vec::new();
    for x in xs {
        for &l in x.letters() {
            push_reduced(g, &mut out, l);
        }
    }
    element_from_reduced(g, out)
}

pub fn multiply(g: &Graph, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
    check_letters(g, x.letters())?;
    check_letters(g, y.letters())?;
    Ok(mul(g, x, y))
}

pub(crate) fn inv(g: &Graph, x: &GroupElement) -> GroupElement {
    element_from_reduced(g, x.word().inverse().into_letters())
}

pub fn invert(g: &Graph, x: &GroupElement) -> GroupElement {
    inv(g, x)
}

/// `x · y · x⁻¹`.
pub fn conjugate(g: &Graph, x: &GroupElement, y: &GroupElement) -> GroupElement {
    mul_all(g, [x, y, &inv(g, x)])
}

/// `x y x⁻¹ y⁻¹`.
pub fn commutator(g: &Graph, x: &GroupElement, y: &GroupElement) -> GroupElement {
    mul_all(g, [x, y, &inv(g, x), &inv(g, y)])
}

/// True iff no reduction applies to `w`.
pub fn is_geodesic(g: &Graph, w: &Word) -> bool {
    let mut out = Vec::with_capacity(w.len());
    for &x in w.letters() {
        if x.generator() >= g.vertex_count() || push_reduced(g, &mut out, x) {
            return false;
        }
    }
    true
}

/// Splits a reduced word into `(rest, tail)` where `tail` is the maximal
/// right divisor supported in `s`. Both halves keep their relative order.
fn split_right(g: &Graph, letters: &[Letter], s: VertexSet) -> (Vec<Letter>, Vec<Letter>) {
    let mut kept_after = 0u64;
    let mut keep = vec![true; letters.len()];
    for i in (0..letters.len()).rev() {
        let v = letters[i].generator();
        if s.contains(v) && kept_after & !g.adj_mask(v) == 0 {
            keep[i] = false;
        } else {
            kept_after |= 1 << v;
        }
    }
    let mut rest = Vec::new();
    let mut tail = Vec::new();
    for (l, k) in letters.iter().zip(keep) {
        if k {
            rest.push(*l)
        } else {
            tail.push(*l)
        }
    }
    (rest, tail)
}

/// Mirror of [`split_right`]: `(head, rest)` with `head` the maximal left divisor in `s`.
fn split_left(g: &Graph, letters: &[Letter], s: VertexSet) -> (Vec<Letter>, Vec<Letter>) {
    let mut kept_before = 0u64;
    let mut head = Vec::new();
    let mut rest = Vec::new();
    for &l in letters {
        let v = l.generator();
        if s.contains(v) && kept_before & !g.adj_mask(v) == 0 {
            head.push(l);
        } else {
            kept_before |= 1 << v;
            rest.push(l);
        }
    }
    (head, rest)
}

/// Minimal-length representative of the coset `x · G_s`.
pub fn gate_right(g: &Graph, x: &GroupElement, s: VertexSet) -> GroupElement {
    let (rest, _) = split_right(g, x.letters(), s);
    element_from_reduced(g, rest)
}

/// Minimal-length representative of the coset `G_s · x`.
pub fn gate_left(g: &Graph, x: &GroupElement, s: VertexSet) -> GroupElement {
    let (_, rest) = split_left(g, x.letters(), s);
    element_from_reduced(g, rest)
}

/// `x = head · rest` with `head ∈ G_s` and `rest` minimal in `G_s · x`.
pub fn split_left_coset(g: &Graph, x: &GroupElement, s: VertexSet) -> (GroupElement, GroupElement) {
    let (head, rest) = split_left(g, x.letters(), s);
    (element_from_reduced(g, head), element_from_reduced(g, rest))
}

/// `x = rest · tail` with `tail ∈ G_s` and `rest` minimal in `x · G_s`.
pub fn split_right_coset(g: &Graph, x: &GroupElement, s: VertexSet) -> (GroupElement, GroupElement) {
    let (rest, tail) = split_right(g, x.letters(), s);
    (element_from_reduced(g, rest), element_from_reduced(g, tail))
}

/// `x ∈ G_s`.
pub fn member_of_standard(x: &GroupElement, s: VertexSet) -> bool {
    x.letter_set().is_subset(s)
}

/// `x ∈ G_a · G_b`.
pub fn in_double_coset(g: &Graph, x: &GroupElement, a: VertexSet, b: VertexSet) -> bool {
    let (_, rest) = split_left(g, x.letters(), a);
    rest.iter().all(|l| b.contains(l.generator()))
}

/// Strips conjugating letters until the core is cyclically reduced.
pub fn cyclic_reduce(g: &Graph, x: &GroupElement) -> SupportResult {
    let mut core = x.letters().to_vec();
    let mut conj = Vec::new();
    'outer: loop {
        let mut before = 0u64;
        for i in 0..core.len() {
            let l = core[i];
            let v = l.generator();
            if before & !g.adj_mask(v) == 0 {
                // `l` is a left divisor; look for `l⁻¹` as a right divisor
                let mut after = 0u64;
                for j in (i + 1..core.len()).rev() {
                    let r = core[j];
                    if r == l.inverse() && after & !g.adj_mask(v) == 0 {
                        core.remove(j);
                        core.remove(i);
                        conj.push(l);
                        continue 'outer;
                    }
                    after |= 1 << r.generator();
                }
            }
            before |= 1 << v;
        }
        break;
    }
    let core = element_from_reduced(g, core);
    SupportResult {
        conjugator: element_from_reduced(g, reduce_letters(g, conj)),
        core_letters: core.letter_set(),
        core,
    }
}

/// All elements of word length `≤ radius`, grouped by length.
pub fn ball_by_length(g: &Graph, radius: usize) -> Vec<Vec<GroupElement>> {
    let letters: Vec<Letter> = (0..g.vertex_count())
        .flat_map(|v| [Letter::pos(v), Letter::neg(v)])
        .collect();
    let mut layers = vec![vec![GroupElement::identity()]];
    for _ in 0..radius {
        let last = layers.last().expect("nonempty");
        let mut next = std::collections::HashSet::new();
        for x in last {
            for &l in &letters {
                let mut w = x.letters().to_vec();
                if !push_reduced(g, &mut w, l) {
                    next.insert(element_from_reduced(g, w));
                }
            }
        }
        let mut next: Vec<_> = next.into_iter().collect();
        next.sort();
        layers.push(next);
    }
    layers
}

/// All elements of word length `≤ radius`, sorted by (length, normal form).
pub fn ball(g: &Graph, radius: usize) -> Vec<GroupElement> {
    ball_by_length(g, radius).into_iter().flatten().collect()
}

/// Parses `name` / `name^-1` tokens separated by whitespace. Empty input is the identity word.
pub fn parse_word(g: &Graph, text: &str) -> Result<Word> {
    text.split_whitespace()
        .map(|tok| {
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            if name.is_empty() || name.contains('^') {
                return Err(Error::MalformedWord(tok.to_string()));
            }
            let v = g.vertex(name)?;
            Ok(Letter::new(v, inverse))
        })
        .collect::<Result<Vec<_>>>()
        .map(Word)
}

pub fn parse_element(g: &Graph, text: &str) -> Result<GroupElement> {
    Ok(reduce_unchecked(g, parse_word(g, text)?.letters()))
}

pub fn format_letters(g: &Graph, letters: &[Letter]) -> String {
    letters
        .iter()
        .map(|l| {
            if l.is_inverse() {
                format!("{}^-1", g.name(l.generator()))
            } else {
                g.name(l.generator()).to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn format_word(g: &Graph, w: &Word) -> String {
    format_letters(g, w.letters())
}

pub fn format_element(g: &Graph, x: &GroupElement) -> String {
    format_letters(g, x.letters())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::parse("vertices: a b c d\nedges: a-b b-c c-d d-a").unwrap()
    }

    fn nf(g: &Graph, s: &str) -> String {
        format_element(g, &reduce(g, &parse_word(g, s).unwrap()).unwrap())
    }

    fn el(g: &Graph, s: &str) -> GroupElement {
        parse_element(g, s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let g = c4();
        assert_eq!(nf(&g, "b a"), "a b");
        assert_eq!(nf(&g, "a b a^-1"), "b");
        assert_eq!(nf(&g, "a c a^-1"), "a c a^-1");
        assert_eq!(nf(&g, ""), "");
        assert_eq!(nf(&g, "a^-1 a"), "");
        // sign order: s < s^-1 among available letters
        assert_eq!(nf(&g, "b^-1 a"), "a b^-1");
        assert_eq!(nf(&g, "c^-1 a"), "c^-1 a");
    }

    #[test]
    fn invalid_letter() {
        let g = c4();
        let w = Word::from_letters(vec![Letter::pos(9)]);
        assert_eq!(reduce(&g, &w), Err(Error::InvalidLetter(9)));
        assert!(parse_word(&g, "a^2").is_err());
        assert!(parse_word(&g, "z").is_err());
        assert!(parse_word(&g, "^-1").is_err());
    }

    #[test]
    fn multiply_and_invert() {
        let c5 = Graph::cycle(5);
        let x = el(&c5, "v1 v3");
        assert!(multiply(&c5, &x, &invert(&c5, &x)).unwrap().is_identity());
        assert_eq!(format_element(&c5, &multiply(&c5, &el(&c5, "v1"), &el(&c5, "v2")).unwrap()), "v1 v2");
        assert_eq!(format_element(&c5, &multiply(&c5, &x, &el(&c5, "v3^-1")).unwrap()), "v1");
        assert_eq!(format_element(&c5, &invert(&c5, &x)), "v3^-1 v1^-1");
        assert!(invert(&c5, &GroupElement::identity()).is_identity());
        let g = c4();
        assert_eq!(format_element(&g, &invert(&g, &el(&g, "a b"))), "a^-1 b^-1");
    }

    #[test]
    fn geodesic_examples() {
        let g = c4();
        assert!(!is_geodesic(&g, &parse_word(&g, "a b a^-1").unwrap()));
        let c5 = Graph::cycle(5);
        assert!(is_geodesic(&c5, &parse_word(&c5, "v1 v3 v5 v2 v4").unwrap()));
        assert!(is_geodesic(&c5, &Word::new()));
    }

    #[test]
    fn cyclic_reduce_examples() {
        let c5 = Graph::cycle(5);
        let r = cyclic_reduce(&c5, &el(&c5, "v2 v1 v2^-1"));
        // v1 and v2 commute, so the input is already v1
        assert_eq!(r.core_letters, VertexSet::singleton(0));
        let r = cyclic_reduce(&c5, &el(&c5, "v3 v1 v3^-1"));
        assert_eq!(format_element(&c5, &r.conjugator), "v3");
        assert_eq!(r.core_letters, VertexSet::singleton(0));
        let r = cyclic_reduce(&c5, &el(&c5, "v1 v3"));
        assert!(r.conjugator.is_identity());
        assert_eq!(r.core_letters, VertexSet::from_iter([0, 2]));
        let g = c4();
        let r = cyclic_reduce(&g, &el(&g, "a b a^-1"));
        assert!(r.conjugator.is_identity());
        assert_eq!(r.core_letters, g.parse_vertex_set("b").unwrap());
    }

    #[test]
    fn cyclic_reduce_reassembles() {
        let c5 = Graph::cycle(5);
        for x in ball(&c5, 4) {
            let r = cyclic_reduce(&c5, &x);
            assert_eq!(conjugate(&c5, &r.conjugator, &r.core), x);
        }
    }

    #[test]
    fn gate_examples() {
        let c5 = Graph::cycle(5);
        let v2 = VertexSet::singleton(1);
        assert_eq!(format_element(&c5, &gate_right(&c5, &el(&c5, "v1 v2"), v2)), "v1");
        assert_eq!(format_element(&c5, &gate_right(&c5, &el(&c5, "v2 v1"), v2)), "v1");
        assert!(gate_right(&c5, &GroupElement::identity(), c5.vertices()).is_identity());
        assert_eq!(format_element(&c5, &gate_right(&c5, &el(&c5, "v2 v4"), v2)), "v2 v4");
    }

    #[test]
    fn membership_examples() {
        let c5 = Graph::cycle(5);
        assert!(member_of_standard(&el(&c5, "v1 v3"), VertexSet::from_iter([0, 2])));
        assert!(!member_of_standard(&el(&c5, "v3 v1 v3^-1"), VertexSet::singleton(0)));
        assert!(member_of_standard(&GroupElement::identity(), VertexSet::EMPTY));
        let (a, b) = (VertexSet::singleton(0), VertexSet::singleton(2));
        assert!(in_double_coset(&c5, &el(&c5, "v1 v3"), a, b));
        assert!(!in_double_coset(&c5, &el(&c5, "v3 v1"), a, b));
        assert!(in_double_coset(&c5, &GroupElement::identity(), a, b));
    }

    #[test]
    fn ball_sizes() {
        // free group of rank 2: 1, 4, 12, 36
        let f2 = Graph::new(["x", "y"], []).unwrap();
        let sizes: Vec<usize> = ball_by_length(&f2, 3).iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 4, 12, 36]);
        // Z^2: sphere of radius k has 4k elements
        let z2 = Graph::complete(2);
        let sizes: Vec<usize> = ball_by_length(&z2, 4).iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 4, 8, 12, 16]);
    }
}
