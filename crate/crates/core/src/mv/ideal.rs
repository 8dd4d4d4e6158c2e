//! Ideals, the radical, quotients and the semisimple representation of
//! finite algebras.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mv::function::{FnAlgebra, FnElement};
use crate::mv::hom::Homomorphism;
use crate::mv::table::TableAlgebra;
use crate::rational::Rat01;

/// A set of element indices of a finite algebra, sorted ascending.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Ideal {
    pub members: Vec<usize>,
}

impl Ideal {
    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_zero(&self, a: &TableAlgebra) -> bool {
        self.members == [a.zero()]
    }
}

/// Contains 0, is downward closed and closed under ⊕.
pub fn is_ideal(a: &TableAlgebra, members: &[usize]) -> bool {
    let n = a.size();
    let mut inside = vec![false; n];
    for &m in members {
        if m >= n {
            return false;
        }
        inside[m] = true;
    }
    if !inside[a.zero()] {
        return false;
    }
    for x in 0..n {
        if !inside[x] {
            continue;
        }
        for y in 0..n {
            if a.leq(y, x) && !inside[y] {
                return false;
            }
            if inside[y] && !inside[a.oplus(x, y)] {
                return false;
            }
        }
    }
    true
}

/// Least ideal containing `seeds`.
pub fn ideal_closure(a: &TableAlgebra, seeds: &[usize]) -> Ideal {
    let n = a.size();
    let mut inside = vec![false; n];
    inside[a.zero()] = true;
    for &s in seeds {
        inside[s] = true;
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            if !inside[x] {
                continue;
            }
            for y in 0..n {
                let s = a.oplus(x, y);
                if inside[y] && !inside[s] {
                    inside[s] = true;
                    changed = true;
                }
                if !inside[y] && a.leq(y, x) {
                    inside[y] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ideal {
        members: (0..n).filter(|&x| inside[x]).collect(),
    }
}

/// All ideals, by breadth-first closure search from `{0}`. `budget` caps the
/// number of ideals.
pub fn ideals(a: &TableAlgebra, budget: usize) -> Result<Vec<Ideal>> {
    let start = ideal_closure(a, &[]);
    let mut seen: BTreeSet<Ideal> = BTreeSet::new();
    let mut queue = vec![start.clone()];
    seen.insert(start);
    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head].clone();
        head += 1;
        for x in 0..a.size() {
            if cur.contains(x) {
                continue;
            }
            let mut seeds = cur.members.clone();
            seeds.push(x);
            let next = ideal_closure(a, &seeds);
            if seen.insert(next.clone()) {
                if seen.len() > budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                queue.push(next);
            }
        }
    }
    let mut out: Vec<Ideal> = seen.into_iter().collect();
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    Ok(out)
}

/// Proper ideals not contained in any other proper ideal, largest first.
pub fn maximal_ideals(a: &TableAlgebra, budget: usize) -> Result<Vec<Ideal>> {
    let proper: Vec<Ideal> = ideals(a, budget)?
        .into_iter()
        .filter(|i| !i.contains(a.one()))
        .collect();
    let mut out: Vec<Ideal> = proper
        .iter()
        .filter(|i| {
            !proper
                .iter()
                .any(|j| j.len() > i.len() && i.members.iter().all(|&x| j.contains(x)))
        })
        .cloned()
        .collect();
    out.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.cmp(y)));
    Ok(out)
}

/// Intersection of the maximal ideals; the whole algebra when there are none.
pub fn radical(a: &TableAlgebra, budget: usize) -> Result<Ideal> {
    let maximal = maximal_ideals(a, budget)?;
    let members = (0..a.size())
        .filter(|&x| maximal.iter().all(|m| m.contains(x)))
        .collect();
    Ok(Ideal { members })
}

pub fn is_semisimple(a: &TableAlgebra, budget: usize) -> Result<bool> {
    Ok(radical(a, budget)?.is_zero(a))
}

/// `A/I` together with the canonical surjection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub table: TableAlgebra,
    pub surjection: Homomorphism,
}

/// Quotient by the congruence `x ~ y ⇔ d(x,y) ∈ I`; classes are numbered by
/// their least element.
pub fn quotient(a: &TableAlgebra, ideal: &Ideal) -> Result<Quotient> {
    if !is_ideal(a, &ideal.members) {
        return Err(Error::InvalidIdeal(format!("{:?}", ideal.members)));
    }
    let n = a.size();
    let related = |x: usize, y: usize| ideal.contains(a.distance(x, y));
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for y in x..n {
            if related(x, y) {
                if class[y] != usize::MAX {
                    return Err(Error::NotCongruence(format!("{y} related to two classes")));
                }
                class[y] = c;
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if related(x, y) != (class[x] == class[y]) {
                return Err(Error::NotCongruence(format!(
                    "relation not transitive at ({x},{y})"
                )));
            }
        }
    }
    for x in 0..n {
        if class[a.neg(x)] != class[a.neg(reps[class[x]])] {
            return Err(Error::NotCongruence(format!("negation at {x}")));
        }
        for y in 0..n {
            if class[a.oplus(x, y)] != class[a.oplus(reps[class[x]], reps[class[y]])] {
                return Err(Error::NotCongruence(format!("oplus at ({x},{y})")));
            }
        }
    }
    let m = reps.len();
    let mut oplus = Vec::with_capacity(m * m);
    for &x in &reps {
        for &y in &reps {
            oplus.push(class[a.oplus(x, y)]);
        }
    }
    let neg = reps.iter().map(|&x| class[a.neg(x)]).collect();
    let table = TableAlgebra::from_flat(oplus, neg, class[a.zero()])?;
    Ok(Quotient {
        surjection: Homomorphism::new(n, m, class),
        table,
    })
}

/// The map `a ↦ (rank of a/M in the chain A/M, rescaled)` over the maximal
/// ideals `M`. Fails when some simple quotient is not a chain.
pub fn representation_values(a: &TableAlgebra, budget: usize) -> Result<Vec<FnElement>> {
    let maximal = maximal_ideals(a, budget)?;
    let mut columns: Vec<Vec<Rat01>> = Vec::with_capacity(maximal.len());
    for m in &maximal {
        let q = quotient(a, m)?;
        let t = &q.table;
        if !t.is_total_order() {
            return Err(Error::NotSemisimple(
                "simple quotient is not a chain".into(),
            ));
        }
        let top = (t.size() - 1) as i128;
        let rank: Vec<i128> = (0..t.size())
            .map(|c| (0..t.size()).filter(|&d| d != c && t.leq(d, c)).count() as i128)
            .collect();
        columns.push(
            (0..a.size())
                .map(|x| Rat01::new(rank[q.surjection.map[x]], top))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok((0..a.size())
        .map(|x| FnElement(columns.iter().map(|col| col[x]).collect()))
        .collect())
}

/// A separating function algebra isomorphic to `A`, with the isomorphism.
#[derive(Clone, Debug)]
pub struct SemisimpleRep {
    pub algebra: FnAlgebra,
    /// `A → algebra` on table indices.
    pub embedding: Homomorphism,
}

pub fn semisimple_representation(a: &TableAlgebra, budget: usize) -> Result<SemisimpleRep> {
    let values = representation_values(a, budget)?;
    let mut distinct: BTreeMap<&FnElement, usize> = BTreeMap::new();
    for (x, v) in values.iter().enumerate() {
        if let Some(y) = distinct.insert(v, x) {
            return Err(Error::NotSemisimple(format!(
                "elements {y} and {x} have the same image"
            )));
        }
    }
    let points = values.first().map_or(0, |v| v.len());
    let carrier: Vec<String> = (0..points).map(|i| format!("m{i}")).collect();
    let algebra = FnAlgebra::from_elements(carrier, values.clone())
        .map_err(|e| Error::NotSemisimple(format!("image is not a subalgebra: {e}")))?;
    let map = values
        .iter()
        .map(|v| algebra.index_of(v).expect("image element present"))
        .collect();
    let embedding = Homomorphism::new(a.size(), values.len(), map);
    if !embedding.is_homomorphism(a, algebra.table()?) {
        return Err(Error::NotSemisimple(
            "representation is not a homomorphism".into(),
        ));
    }
    Ok(SemisimpleRep { algebra, embedding })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mv::table::is_mv;

    /// Ideals by testing every subset against the definition.
    fn brute_ideals(a: &TableAlgebra) -> Vec<Vec<usize>> {
        let n = a.size();
        (0u32..1 << n)
            .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| is_ideal(a, s))
            .collect()
    }

    #[test]
    fn ideal_search_matches_subset_enumeration() {
        let a = TableAlgebra::product(&[TableAlgebra::chain(2), TableAlgebra::chain(3)]);
        let mut got: Vec<Vec<usize>> = ideals(&a, 1000)
            .unwrap()
            .into_iter()
            .map(|i| i.members)
            .collect();
        let mut want = brute_ideals(&a);
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn radical_of_product_is_zero() {
        let a = TableAlgebra::product(&[TableAlgebra::chain(2), TableAlgebra::chain(3)]);
        assert_eq!(radical(&a, 1000).unwrap().members, vec![a.zero()]);
        assert_eq!(maximal_ideals(&a, 1000).unwrap().len(), 2);
    }

    #[test]
    fn boolean_and_chains_are_simple() {
        let b = TableAlgebra::boolean(1);
        assert_eq!(radical(&b, 10).unwrap().members, vec![0]);
        let c = TableAlgebra::chain(6);
        let m = maximal_ideals(&c, 100).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].members, vec![0]);
    }

    #[test]
    fn quotients() {
        let a = TableAlgebra::product(&[TableAlgebra::chain(2), TableAlgebra::chain(3)]);
        let q0 = quotient(&a, &ideal_closure(&a, &[])).unwrap();
        assert_eq!(q0.table.size(), 12);
        let whole = Ideal {
            members: (0..12).collect(),
        };
        assert_eq!(quotient(&a, &whole).unwrap().table.size(), 1);
        // {0} × Ł3: first coordinate zero, i.e. indices 0..4.
        let i = Ideal {
            members: (0..4).collect(),
        };
        let q = quotient(&a, &i).unwrap();
        assert_eq!(q.table.size(), 3);
        assert!(is_mv(&q.table));
        assert!(q.table.is_total_order());
        assert!(q.surjection.is_homomorphism(&a, &q.table));
        assert!(matches!(
            quotient(&a, &Ideal { members: vec![1] }),
            Err(Error::InvalidIdeal(_))
        ));
    }

    #[test]
    fn representation_of_product() {
        let a = TableAlgebra::product(&[TableAlgebra::chain(2), TableAlgebra::chain(3)]);
        let rep = semisimple_representation(&a, 1000).unwrap();
        assert_eq!(rep.algebra.points(), 2);
        assert!(rep.embedding.is_injective());
        let two = semisimple_representation(&TableAlgebra::boolean(1), 10).unwrap();
        assert_eq!(two.algebra.size().unwrap(), 2);
    }
}
