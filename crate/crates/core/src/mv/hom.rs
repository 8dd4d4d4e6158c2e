//! Homomorphisms between finite algebras: checks, enumeration by
//! backtracking over generator images, and isomorphism search.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mv::function::FnAlgebra;
use crate::mv::table::TableAlgebra;

/// An element map between finite algebras on table indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Homomorphism {
    pub source_size: usize,
    pub target_size: usize,
    pub map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(source_size: usize, target_size: usize, map: Vec<usize>) -> Self {
        debug_assert_eq!(map.len(), source_size);
        Homomorphism {
            source_size,
            target_size,
            map,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, n, (0..n).collect())
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Preserves 0, ⊕ and ¬.
    pub fn is_homomorphism(&self, a: &TableAlgebra, b: &TableAlgebra) -> bool {
        let f = &self.map;
        if f.len() != a.size() || f.iter().any(|&y| y >= b.size()) || f[a.zero()] != b.zero() {
            return false;
        }
        (0..a.size()).all(|x| {
            f[a.neg(x)] == b.neg(f[x])
                && (0..a.size()).all(|y| f[a.oplus(x, y)] == b.oplus(f[x], f[y]))
        })
    }

    /// Preserves ⊙, ∧, ∨ and 1.
    pub fn preserves_derived(&self, a: &TableAlgebra, b: &TableAlgebra) -> bool {
        let f = &self.map;
        if f[a.one()] != b.one() {
            return false;
        }
        (0..a.size()).all(|x| {
            (0..a.size()).all(|y| {
                f[a.odot(x, y)] == b.odot(f[x], f[y])
                    && f[a.meet(x, y)] == b.meet(f[x], f[y])
                    && f[a.join(x, y)] == b.join(f[x], f[y])
            })
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target_size];
        self.map
            .iter()
            .all(|&y| !core::mem::replace(&mut seen[y], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.source_size == self.target_size && self.is_injective()
    }

    pub fn inverse(&self) -> Option<Homomorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.target_size];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(Homomorphism::new(self.target_size, self.source_size, inv))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Homomorphism {
        Homomorphism::new(
            self.source_size,
            other.target_size,
            self.map.iter().map(|&y| other.map[y]).collect(),
        )
    }
}

/// `a ≤ b*` implies `ω(a) ≤ ω(b)*` and `ω(a + b) = ω(a) + ω(b)`.
pub fn is_linear(map: &[usize], a: &TableAlgebra, b: &TableAlgebra) -> bool {
    (0..a.size()).all(|x| {
        (0..a.size()).all(|y| {
            if !a.leq(x, a.neg(y)) {
                return true;
            }
            b.leq(map[x], b.neg(map[y])) && map[a.oplus(x, y)] == b.oplus(map[x], map[y])
        })
    })
}

/// One closure step of a generator plan.
#[derive(Clone, Copy, Debug)]
enum Step {
    Neg(usize, usize),
    Oplus(usize, usize, usize),
}

/// A generating set of a finite algebra together with, for each generator,
/// the elements its addition brings into the closure.
struct Plan {
    generators: Vec<usize>,
    /// `layers[0]` closes `{0}`; `layers[k + 1]` follows generator `k`.
    layers: Vec<Vec<Step>>,
    order: Vec<usize>,
}

/// Closes `order` under ⊕ and ¬; pairs among `order[..first]` are known to
/// be closed already. New elements are appended and recorded as steps.
fn close_from(
    a: &TableAlgebra,
    inside: &mut [bool],
    order: &mut Vec<usize>,
    steps: &mut Vec<Step>,
    first: usize,
) {
    let mut i = first;
    while i < order.len() {
        let x = order[i];
        let nx = a.neg(x);
        if !inside[nx] {
            inside[nx] = true;
            order.push(nx);
            steps.push(Step::Neg(x, nx));
        }
        for j in 0..=i {
            let y = order[j];
            let s = a.oplus(x, y);
            if !inside[s] {
                inside[s] = true;
                order.push(s);
                steps.push(Step::Oplus(x, y, s));
            }
        }
        i += 1;
    }
}

fn plan(a: &TableAlgebra) -> Plan {
    let n = a.size();
    let down: Vec<usize> = (0..n)
        .map(|x| (0..n).filter(|&y| a.leq(y, x)).count())
        .collect();
    let mut inside = vec![false; n];
    let mut order = vec![a.zero()];
    inside[a.zero()] = true;
    let mut steps = Vec::new();
    close_from(a, &mut inside, &mut order, &mut steps, 0);
    let mut layers = vec![steps];
    let mut generators = Vec::new();
    while let Some(g) = (0..n).filter(|&x| !inside[x]).min_by_key(|&x| (down[x], x)) {
        generators.push(g);
        inside[g] = true;
        order.push(g);
        let mut steps = Vec::new();
        let first = order.len() - 1;
        close_from(a, &mut inside, &mut order, &mut steps, first);
        layers.push(steps);
    }
    Plan {
        generators,
        layers,
        order,
    }
}

struct Search<'a> {
    a: &'a TableAlgebra,
    b: &'a TableAlgebra,
    plan: Plan,
    allowed: &'a dyn Fn(usize, usize) -> bool,
    injective: bool,
    limit: usize,
    budget: usize,
    nodes: usize,
    image: Vec<Option<usize>>,
    used: Vec<bool>,
    assigned: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn assign(&mut self, x: usize, y: usize) -> bool {
        if !(self.allowed)(x, y) || (self.injective && self.used[y]) {
            return false;
        }
        self.image[x] = Some(y);
        self.used[y] = true;
        self.assigned.push(x);
        true
    }

    fn unassign_to(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let x = self.assigned.pop().unwrap();
            let y = self.image[x].take().unwrap();
            self.used[y] = false;
        }
    }

    /// Checks ⊕ and ¬ on every pair that involves an element assigned after
    /// `mark` and whose result is already assigned.
    fn consistent_since(&self, mark: usize) -> bool {
        let (a, b) = (self.a, self.b);
        for &x in &self.assigned[mark..] {
            let fx = self.image[x].unwrap();
            if let Some(fnx) = self.image[a.neg(x)] {
                if fnx != b.neg(fx) {
                    return false;
                }
            }
            for &y in &self.assigned {
                let fy = self.image[y].unwrap();
                if let Some(fs) = self.image[a.oplus(x, y)] {
                    if fs != b.oplus(fx, fy) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn apply_layer(&mut self, k: usize) -> bool {
        for i in 0..self.plan.layers[k].len() {
            let (x, y) = match self.plan.layers[k][i] {
                Step::Neg(s, x) => (x, self.b.neg(self.image[s].unwrap())),
                Step::Oplus(s, t, x) => (
                    x,
                    self.b.oplus(self.image[s].unwrap(), self.image[t].unwrap()),
                ),
            };
            if !self.assign(x, y) {
                return false;
            }
        }
        true
    }

    fn run(&mut self, depth: usize) -> Result<()> {
        if self.found.len() >= self.limit {
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        if depth == self.plan.generators.len() {
            self.found
                .push(self.image.iter().map(|v| v.unwrap()).collect());
            return Ok(());
        }
        let g = self.plan.generators[depth];
        for y in 0..self.b.size() {
            let mark = self.assigned.len();
            if self.assign(g, y) && self.apply_layer(depth + 1) && self.consistent_since(mark) {
                self.run(depth + 1)?;
            }
            self.unassign_to(mark);
            if self.found.len() >= self.limit {
                break;
            }
        }
        Ok(())
    }
}

fn search(
    a: &TableAlgebra,
    b: &TableAlgebra,
    allowed: &dyn Fn(usize, usize) -> bool,
    injective: bool,
    limit: usize,
    budget: usize,
) -> Result<Vec<Vec<usize>>> {
    let mut s = Search {
        a,
        b,
        plan: plan(a),
        allowed,
        injective,
        limit,
        budget,
        nodes: 0,
        image: vec![None; a.size()],
        used: vec![false; b.size()],
        assigned: Vec::new(),
        found: Vec::new(),
    };
    debug_assert_eq!(s.plan.order.len(), a.size());
    if s.assign(a.zero(), b.zero()) && s.apply_layer(0) && s.consistent_since(0) {
        s.run(0)?;
    }
    Ok(s.found)
}

/// All homomorphisms `A → B`. `budget` caps the search nodes visited.
pub fn hom_enumerate(
    a: &TableAlgebra,
    b: &TableAlgebra,
    budget: usize,
) -> Result<Vec<Homomorphism>> {
    Ok(search(a, b, &|_, _| true, false, usize::MAX, budget)?
        .into_iter()
        .map(|m| Homomorphism::new(a.size(), b.size(), m))
        .collect())
}

/// Like [`hom_enumerate`] but only maps whose generator images pass `allowed`.
pub fn hom_enumerate_filtered(
    a: &TableAlgebra,
    b: &TableAlgebra,
    allowed: &dyn Fn(usize, usize) -> bool,
    budget: usize,
) -> Result<Vec<Homomorphism>> {
    Ok(search(a, b, allowed, false, usize::MAX, budget)?
        .into_iter()
        .map(|m| Homomorphism::new(a.size(), b.size(), m))
        .collect())
}

/// Why two algebras are not isomorphic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Certificate {
    Size(usize, usize),
    /// Multisets of (down-set size, up-set size, number of distinct multiples).
    Signature,
    /// Multisets of element denominator lcms of two function algebras.
    Denominators,
    /// The full search found no bijective homomorphism.
    Exhausted,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IsoResult {
    Isomorphic {
        forward: Homomorphism,
        inverse: Homomorphism,
    },
    NotIsomorphic(Certificate),
}

impl IsoResult {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoResult::Isomorphic { .. })
    }

    pub fn witness(&self) -> Option<&Homomorphism> {
        match self {
            IsoResult::Isomorphic { forward, .. } => Some(forward),
            IsoResult::NotIsomorphic(_) => None,
        }
    }
}

fn signatures(a: &TableAlgebra) -> Vec<(usize, usize, usize)> {
    let n = a.size();
    (0..n)
        .map(|x| {
            let down = (0..n).filter(|&y| a.leq(y, x)).count();
            let up = (0..n).filter(|&y| a.leq(x, y)).count();
            let mut multiples = vec![x];
            let mut cur = x;
            loop {
                cur = a.oplus(cur, x);
                if multiples.contains(&cur) {
                    break;
                }
                multiples.push(cur);
            }
            (down, up, multiples.len())
        })
        .collect()
}

fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.sort();
    v
}

/// Isomorphism search pruned by size and element signatures.
pub fn iso_check(a: &TableAlgebra, b: &TableAlgebra, budget: usize) -> Result<IsoResult> {
    if a.size() != b.size() {
        return Ok(IsoResult::NotIsomorphic(Certificate::Size(
            a.size(),
            b.size(),
        )));
    }
    let (sa, sb) = (signatures(a), signatures(b));
    if sorted(&sa) != sorted(&sb) {
        return Ok(IsoResult::NotIsomorphic(Certificate::Signature));
    }
    let allowed = |x: usize, y: usize| sa[x] == sb[y];
    let found = search(a, b, &allowed, true, 1, budget)?;
    Ok(match found.into_iter().next() {
        Some(map) => {
            let forward = Homomorphism::new(a.size(), b.size(), map);
            let inverse = forward
                .inverse()
                .expect("injective map between equal sizes");
            IsoResult::Isomorphic { forward, inverse }
        }
        None => IsoResult::NotIsomorphic(Certificate::Exhausted),
    })
}

/// [`iso_check`] on function algebras, additionally pruned by element
/// denominators, which are invariant for separating representations.
pub fn iso_check_fn(a: &FnAlgebra, b: &FnAlgebra, budget: usize) -> Result<IsoResult> {
    let (ta, tb) = (a.table()?, b.table()?);
    if ta.size() != tb.size() {
        return Ok(IsoResult::NotIsomorphic(Certificate::Size(
            ta.size(),
            tb.size(),
        )));
    }
    let da: Vec<i128> = a.elements()?.iter().map(|e| e.denominator_lcm()).collect();
    let db: Vec<i128> = b.elements()?.iter().map(|e| e.denominator_lcm()).collect();
    let separating = a.is_separating()? && b.is_separating()?;
    if separating && sorted(&da) != sorted(&db) {
        return Ok(IsoResult::NotIsomorphic(Certificate::Denominators));
    }
    let (sa, sb) = (signatures(ta), signatures(tb));
    if sorted(&sa) != sorted(&sb) {
        return Ok(IsoResult::NotIsomorphic(Certificate::Signature));
    }
    let allowed = |x: usize, y: usize| sa[x] == sb[y] && (!separating || da[x] == db[y]);
    let found = search(ta, tb, &allowed, true, 1, budget)?;
    Ok(match found.into_iter().next() {
        Some(map) => {
            let forward = Homomorphism::new(ta.size(), tb.size(), map);
            let inverse = forward
                .inverse()
                .expect("injective map between equal sizes");
            IsoResult::Isomorphic { forward, inverse }
        }
        None => IsoResult::NotIsomorphic(Certificate::Exhausted),
    })
}

/// Multiset of element signatures, usable as a cheap isomorphism invariant.
pub fn signature_profile(a: &TableAlgebra) -> BTreeMap<(usize, usize, usize), usize> {
    let mut out = BTreeMap::new();
    for s in signatures(a) {
        *out.entry(s).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mv::function::{generate_subalgebra, FnAlgebra, FnElement};
    use crate::rational::Rat01;
    use alloc::string::ToString;

    /// Every map `A → B` tested against the definition.
    fn brute_homs(a: &TableAlgebra, b: &TableAlgebra) -> Vec<Vec<usize>> {
        let (n, m) = (a.size(), b.size());
        let total = m.pow(n as u32);
        (0..total)
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let d = code % m;
                        code /= m;
                        d
                    })
                    .collect::<Vec<_>>()
            })
            .filter(|map| Homomorphism::new(n, m, map.clone()).is_homomorphism(a, b))
            .collect()
    }

    #[test]
    fn chain_two_into_chain_four() {
        let (a, b) = (TableAlgebra::chain(2), TableAlgebra::chain(4));
        let homs = hom_enumerate(&a, &b, 10_000).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].map, vec![0, 2, 4]);
        assert_eq!(brute_homs(&a, &b), vec![vec![0, 2, 4]]);
    }

    #[test]
    fn chain_three_into_chain_two_is_empty() {
        let (a, b) = (TableAlgebra::chain(3), TableAlgebra::chain(2));
        assert!(hom_enumerate(&a, &b, 10_000).unwrap().is_empty());
        assert!(brute_homs(&a, &b).is_empty());
    }

    #[test]
    fn enumeration_matches_brute_force_on_products() {
        let a = TableAlgebra::boolean(2);
        let b = TableAlgebra::product(&[TableAlgebra::chain(2), TableAlgebra::chain(1)]);
        let mut got: Vec<Vec<usize>> = hom_enumerate(&a, &b, 100_000)
            .unwrap()
            .into_iter()
            .map(|h| h.map)
            .collect();
        got.sort();
        let mut want = brute_homs(&a, &b);
        want.sort();
        assert_eq!(got, want);
        for map in got {
            assert!(Homomorphism::new(a.size(), b.size(), map).preserves_derived(&a, &b));
        }
    }

    #[test]
    fn identity_is_linear() {
        let a = TableAlgebra::chain(5);
        assert!(is_linear(&Homomorphism::identity(6).map, &a, &a));
    }

    #[test]
    fn iso_between_chain_and_generated_chain() {
        let g = generate_subalgebra(
            vec!["p".to_string()],
            vec![FnElement(vec![Rat01::new(1, 6).unwrap()])],
            100,
        )
        .unwrap();
        let r = iso_check(&TableAlgebra::chain(6), g.table().unwrap(), 10_000).unwrap();
        assert!(r.is_isomorphic());
        assert!(iso_check_fn(&FnAlgebra::chain(6), &g, 10_000)
            .unwrap()
            .is_isomorphic());
    }

    #[test]
    fn size_certificate() {
        let a = TableAlgebra::product(&[TableAlgebra::chain(2), TableAlgebra::chain(2)]);
        assert_eq!(
            iso_check(&a, &TableAlgebra::chain(4), 1000).unwrap(),
            IsoResult::NotIsomorphic(Certificate::Size(9, 5))
        );
    }

    #[test]
    fn self_iso_and_symmetry() {
        let a = TableAlgebra::product(&[TableAlgebra::chain(2), TableAlgebra::chain(3)]);
        let b = TableAlgebra::product(&[TableAlgebra::chain(3), TableAlgebra::chain(2)]);
        let r = iso_check(&a, &a, 10_000).unwrap();
        let IsoResult::Isomorphic { forward, inverse } = r else {
            panic!("expected isomorphism")
        };
        assert!(forward.is_homomorphism(&a, &a) && inverse.is_homomorphism(&a, &a));
        assert!(iso_check(&a, &b, 10_000).unwrap().is_isomorphic());
        assert!(iso_check(&b, &a, 10_000).unwrap().is_isomorphic());
        let c = TableAlgebra::chain(11);
        assert!(!iso_check(&a, &c, 10_000).unwrap().is_isomorphic());
    }
}
