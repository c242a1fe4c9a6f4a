//! Finite permutation groups with full multiplication tables.
//!
//! Elements are indexed `0..|G|` in breadth-first order from the identity
//! (index 0), extending by right multiplication with the generators in the
//! order given. Products compose right to left: `(gh)(i) = g(h(i))`.

mod abelian;
mod catalog;
mod character;

use std::collections::{HashMap, VecDeque};

pub use abelian::AbelianDecomposition;
pub use catalog::{catalog, CATALOG_NAMES};
pub use character::CentralizerCharacter;

use crate::error::{Error, Result};

/// Images of the points `0..n`.
pub type Perm = Vec<u32>;

/// Default cap on the order of groups generated by closure.
pub const DEFAULT_ORDER_CAP: usize = 5040;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    perms: Vec<Perm>,
    lookup: HashMap<Perm, usize>,
    table: Vec<u32>,
    inverse: Vec<u32>,
    generators: Vec<usize>,
    generator_names: Vec<String>,
    /// `(parent, generator slot)` with `element = parent * generator`.
    tree: Vec<(usize, usize)>,
}

fn compose(g: &[u32], h: &[u32]) -> Perm {
    h.iter().map(|&i| g[i as usize]).collect()
}

/// Parses cycle notation such as `(1 2)(3 4)` or `(1,2,3)` on `points` points.
pub fn parse_cycles(s: &str, points: usize) -> Result<Perm> {
    let bad = |m: &str| Error::InvalidGroup(format!("{m} in `{s}`"));
    let mut perm: Perm = (0..points as u32).collect();
    let t = s.trim();
    if t == "()" || t.is_empty() {
        return Ok(perm);
    }
    let mut rest = t;
    // cycles are multiplied left to right as written, i.e. the rightmost acts first
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
        let close = open.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let body = &open[..close];
        let pts = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<u32>()
                    .ok()
                    .filter(|&v| v >= 1 && v as usize <= points)
                    .map(|v| v - 1)
                    .ok_or_else(|| bad(&format!("point `{p}` out of range 1..={points}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut seen = pts.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != pts.len() {
            return Err(bad("repeated point"));
        }
        cycles.push(pts);
        rest = open[close + 1..].trim_start();
    }
    for c in cycles.iter().rev() {
        let mut cyc: Perm = (0..points as u32).collect();
        for (k, &p) in c.iter().enumerate() {
            cyc[p as usize] = c[(k + 1) % c.len()];
        }
        perm = compose(&cyc, &perm);
    }
    Ok(perm)
}

/// Cycle notation with 1-based points; the identity is `()`.
pub fn format_cycles(p: &[u32]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cyc = vec![start + 1];
        seen[start] = true;
        let mut j = p[start] as usize;
        while j != start {
            seen[j] = true;
            cyc.push(j + 1);
            j = p[j] as usize;
        }
        let body: Vec<String> = cyc.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("({})", body.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

impl FiniteGroup {
    /// Closure of the given permutations; `names` label the generators in words.
    pub fn from_generators(
        name: &str,
        gens: Vec<Perm>,
        names: Vec<String>,
        cap: usize,
    ) -> Result<FiniteGroup> {
        let points = gens.first().map_or(0, |g| g.len());
        if gens.iter().any(|g| g.len() != points) {
            return Err(Error::InvalidGroup(
                "generators act on different point sets".into(),
            ));
        }
        for g in &gens {
            let mut s = g.clone();
            s.sort_unstable();
            if s.iter().enumerate().any(|(i, &v)| v as usize != i) {
                return Err(Error::InvalidGroup("generator is not a permutation".into()));
            }
        }
        if names.len() != gens.len() {
            return Err(Error::InvalidGroup(
                "one name per generator required".into(),
            ));
        }
        let id: Perm = (0..points as u32).collect();
        let mut perms = vec![id.clone()];
        let mut lookup = HashMap::from([(id, 0usize)]);
        let mut tree = vec![(0usize, usize::MAX)];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, s) in gens.iter().enumerate() {
                let y = compose(&perms[x], s);
                if !lookup.contains_key(&y) {
                    if perms.len() >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    lookup.insert(y.clone(), perms.len());
                    queue.push_back(perms.len());
                    perms.push(y);
                    tree.push((x, k));
                }
            }
        }
        let n = perms.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = lookup[&compose(&perms[a], &perms[b])] as u32;
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == 0).unwrap() as u32)
            .collect();
        let generators = gens.iter().map(|g| lookup[g]).collect();
        Ok(FiniteGroup {
            name: name.to_string(),
            perms,
            lookup,
            table,
            inverse,
            generators,
            generator_names: names,
            tree,
        })
    }

    /// Group generated by permutations given in cycle notation; generators are named `g1, g2, …`.
    pub fn from_cycle_strings(name: &str, cycles: &[&str], points: usize) -> Result<FiniteGroup> {
        let gens = cycles
            .iter()
            .map(|c| parse_cycles(c, points))
            .collect::<Result<Vec<_>>>()?;
        let names = (1..=gens.len()).map(|k| format!("g{k}")).collect();
        Self::from_generators(name, gens, names, DEFAULT_ORDER_CAP)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn points(&self) -> usize {
        self.perms[0].len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn perm(&self, g: usize) -> &Perm {
        &self.perms[g]
    }

    pub fn element_of_perm(&self, p: &[u32]) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.perms.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    /// `h g h^{-1}`
    pub fn conjugate(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Conjugacy class of `g`, sorted by element index.
    pub fn class_of(&self, g: usize) -> Vec<usize> {
        let mut c: Vec<usize> = (0..self.order()).map(|h| self.conjugate(h, g)).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// `{h : gh = hg}`, sorted by element index.
    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        (0..self.order()).filter(|&h| self.commutes(g, h)).collect()
    }

    /// All conjugacy classes, ordered by their smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            let c = self.class_of(g);
            for &h in &c {
                seen[h] = true;
            }
            out.push(c);
        }
        out
    }

    pub fn are_conjugate(&self, a: usize, b: usize) -> bool {
        (0..self.order()).any(|h| self.conjugate(h, a) == b)
    }

    /// Subgroup generated by `gens`, sorted by element index.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order()).filter(|&g| seen[g]).collect()
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let n = self.order();
        let mut comms: Vec<usize> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(self.mul(a, b), self.inv(self.mul(b, a)));
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.subgroup(&comms)
    }

    /// Shortest-path word for `g` as a list of generator slots.
    pub fn word_of(&self, g: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut x = g;
        while x != 0 {
            let (p, k) = self.tree[x];
            w.push(k);
            x = p;
        }
        w.reverse();
        w
    }

    /// Parses `e`, cycle notation `(1 2)(3 4)`, or a word such as `g1^3 g2`, `a^3b`, `ab^-1`.
    pub fn parse_element(&self, s: &str) -> Result<usize> {
        let t = s.trim();
        if t.starts_with('(') {
            let p = parse_cycles(t, self.points())?;
            return self.element_of_perm(&p).ok_or_else(|| {
                Error::InvalidGroup(format!("`{t}` is not an element of {}", self.name))
            });
        }
        if t == "e" || t == "1" {
            return Ok(0);
        }
        let bad = |m: &str| Error::InvalidGroup(format!("{m} in word `{t}`"));
        let mut names: Vec<(usize, &String)> = self.generator_names.iter().enumerate().collect();
        names.sort_by_key(|(_, n)| std::cmp::Reverse(n.len()));
        let mut acc = 0usize;
        let mut rest = t;
        while !rest.is_empty() {
            rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == '*');
            if rest.is_empty() {
                break;
            }
            let (slot, name) = names
                .iter()
                .find(|(_, n)| rest.starts_with(n.as_str()))
                .ok_or_else(|| bad("unknown generator"))?;
            rest = &rest[name.len()..];
            let mut exp = 1i64;
            if let Some(r) = rest.strip_prefix('^') {
                let end = r
                    .char_indices()
                    .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-')))
                    .map_or(r.len(), |(i, _)| i);
                exp = r[..end].parse().map_err(|_| bad("bad exponent"))?;
                rest = &r[end..];
            }
            acc = self.mul(acc, self.pow(self.generators[*slot], exp));
        }
        Ok(acc)
    }

    /// Cycle notation of an element.
    pub fn format_element(&self, g: usize) -> String {
        format_cycles(&self.perms[g])
    }

    /// Evaluates a word and checks it against the identity.
    pub(crate) fn assert_identity(&self, word: &str) -> Result<()> {
        if self.parse_element(word)? != 0 {
            return Err(Error::RelationViolated(format!(
                "relation `{word}` fails in {}",
                self.name
            )));
        }
        Ok(())
    }

    pub(crate) fn assert_equal(&self, a: &str, b: &str) -> Result<()> {
        if self.parse_element(a)? != self.parse_element(b)? {
            return Err(Error::RelationViolated(format!(
                "relation `{a} = {b}` fails in {}",
                self.name
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_from_generators() {
        let g = FiniteGroup::from_cycle_strings("S3", &["(1 2)", "(1 2 3)"], 3).unwrap();
        assert_eq!(g.order(), 6);
        let t = g.parse_element("(1 2)").unwrap();
        assert_eq!(g.class_of(t).len(), 3);
        assert_eq!(g.centralizer(t).len(), 2);
        assert_eq!(g.conjugacy_classes().len(), 3);
    }

    #[test]
    fn cycle_round_trip() {
        let p = parse_cycles("(1 3 2)(4 5)", 5).unwrap();
        assert_eq!(format_cycles(&p), "(1 3 2)(4 5)");
        assert_eq!(format_cycles(&parse_cycles("()", 3).unwrap()), "()");
        assert!(parse_cycles("(1 1)", 3).is_err());
        assert!(parse_cycles("(1 4)", 3).is_err());
    }

    #[test]
    fn composition_is_right_to_left() {
        let g = FiniteGroup::from_cycle_strings("S3", &["(1 2)", "(2 3)"], 3).unwrap();
        let ab = g.parse_element("g1 g2").unwrap();
        // g2 first: 2 -> 3, then g1 fixes 3
        assert_eq!(g.perm(ab)[1], 2);
        assert_eq!(g.parse_element("(1 2)(2 3)").unwrap(), ab);
    }

    #[test]
    fn cap_is_enforced() {
        let r = FiniteGroup::from_generators(
            "S5",
            vec![
                parse_cycles("(1 2)", 5).unwrap(),
                parse_cycles("(1 2 3 4 5)", 5).unwrap(),
            ],
            vec!["a".into(), "b".into()],
            50,
        );
        assert!(matches!(r, Err(Error::GroupTooLarge { cap: 50 })));
    }

    #[test]
    fn words_parse_with_and_without_spaces() {
        let g = catalog("G20").unwrap();
        assert_eq!(
            g.parse_element("a^3b").unwrap(),
            g.parse_element("a^3 b").unwrap()
        );
        assert_eq!(
            g.parse_element("a^-1").unwrap(),
            g.parse_element("a^3").unwrap()
        );
        assert!(g.parse_element("c").is_err());
    }

    #[test]
    fn classes_partition_catalog_groups() {
        for name in CATALOG_NAMES {
            let g = catalog(name).unwrap();
            let classes = g.conjugacy_classes();
            let total: usize = classes.iter().map(Vec::len).sum();
            assert_eq!(total, g.order());
            for c in &classes {
                assert_eq!(g.order() % c.len(), 0);
            }
            for h in 0..g.order() {
                assert_eq!(
                    g.word_of(h)
                        .iter()
                        .fold(0, |acc, &k| g.mul(acc, g.generators()[k])),
                    h
                );
            }
        }
    }
}
