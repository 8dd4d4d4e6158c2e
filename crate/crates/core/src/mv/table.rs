//! Finite MV-algebras given by their operation tables.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// An abstract finite algebra `(A, ⊕, ¬, 0)` on the indices `0..n`.
///
/// Construction only checks that the tables are total; whether the MV axioms
/// hold is reported by [`validate_mv`]. Non-MV tables are representable on
/// purpose so that the radical machinery can be exercised on counterexamples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TableAlgebra {
    n: usize,
    oplus: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
}

impl TableAlgebra {
    pub fn new(oplus: Vec<Vec<usize>>, neg: Vec<usize>, zero: usize) -> Result<Self> {
        let n = neg.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty carrier".into()));
        }
        if oplus.len() != n || oplus.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidTable(format!("oplus table must be {n}x{n}")));
        }
        let flat: Vec<usize> = oplus.into_iter().flatten().collect();
        Self::from_flat(flat, neg, zero)
    }

    pub fn from_flat(oplus: Vec<usize>, neg: Vec<usize>, zero: usize) -> Result<Self> {
        let n = neg.len();
        if n == 0 || oplus.len() != n * n {
            return Err(Error::InvalidTable("table dimensions disagree".into()));
        }
        if zero >= n || oplus.iter().chain(neg.iter()).any(|&v| v >= n) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        Ok(TableAlgebra {
            n,
            oplus,
            neg,
            zero,
        })
    }

    /// The chain `Ł_n = {0, 1/n, …, 1}`; element `k` stands for `k/n`.
    pub fn chain(n: usize) -> Self {
        assert!(n >= 1, "a chain needs at least two elements");
        let size = n + 1;
        let oplus = (0..size * size)
            .map(|i| core::cmp::min(n, i / size + i % size))
            .collect();
        let neg = (0..size).map(|k| n - k).collect();
        TableAlgebra {
            n: size,
            oplus,
            neg,
            zero: 0,
        }
    }

    /// `{0,1}^k`.
    pub fn boolean(k: usize) -> Self {
        let factors: Vec<TableAlgebra> = (0..k).map(|_| Self::chain(1)).collect();
        Self::product(&factors)
    }

    /// Direct product; element indices are mixed-radix with the first factor
    /// most significant.
    pub fn product(factors: &[TableAlgebra]) -> Self {
        let sizes: Vec<usize> = factors.iter().map(|f| f.n).collect();
        let n: usize = sizes.iter().product();
        let decode = |mut idx: usize| -> Vec<usize> {
            let mut digits = vec![0; sizes.len()];
            for (slot, &s) in digits.iter_mut().zip(sizes.iter()).rev() {
                *slot = idx % s;
                idx /= s;
            }
            digits
        };
        let encode = |digits: &[usize]| -> usize {
            digits
                .iter()
                .zip(sizes.iter())
                .fold(0, |acc, (&d, &s)| acc * s + d)
        };
        let coords: Vec<Vec<usize>> = (0..n).map(decode).collect();
        let mut oplus = Vec::with_capacity(n * n);
        for x in &coords {
            for y in &coords {
                let z: Vec<usize> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.oplus(x[i], y[i]))
                    .collect();
                oplus.push(encode(&z));
            }
        }
        let neg = coords
            .iter()
            .map(|x| {
                let z: Vec<usize> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.neg(x[i]))
                    .collect();
                encode(&z)
            })
            .collect();
        let zero = encode(&factors.iter().map(|f| f.zero).collect::<Vec<_>>());
        TableAlgebra {
            n,
            oplus,
            neg,
            zero,
        }
    }

    /// The same algebra with element `x` renamed to `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || core::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidTable(
                "relabelling is not a permutation".into(),
            ));
        }
        let mut oplus = vec![0; n * n];
        let mut neg = vec![0; n];
        for x in 0..n {
            neg[perm[x]] = perm[self.neg(x)];
            for y in 0..n {
                oplus[perm[x] * n + perm[y]] = perm[self.oplus(x, y)];
            }
        }
        Self::from_flat(oplus, neg, perm[self.zero])
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.neg[self.zero]
    }

    pub fn is_degenerate(&self) -> bool {
        self.n == 1
    }

    #[inline]
    pub fn oplus(&self, x: usize, y: usize) -> usize {
        self.oplus[x * self.n + y]
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn odot(&self, x: usize, y: usize) -> usize {
        self.neg(self.oplus(self.neg(x), self.neg(y)))
    }

    /// `(x* ⊕ y)* ⊕ y`
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.oplus(self.neg(self.oplus(self.neg(x), y)), y)
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.neg(self.join(self.neg(x), self.neg(y)))
    }

    /// `x ≤ y` iff `x* ⊕ y = 1`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.oplus(self.neg(x), y) == self.one()
    }

    /// `d(x,y) = (x ⊙ y*) ⊕ (y ⊙ x*)`
    pub fn distance(&self, x: usize, y: usize) -> usize {
        self.oplus(self.odot(x, self.neg(y)), self.odot(y, self.neg(x)))
    }

    /// `n·x = x ⊕ … ⊕ x` (`n` copies; `0·x = 0`).
    pub fn times(&self, n: usize, x: usize) -> usize {
        (0..n).fold(self.zero, |acc, _| self.oplus(acc, x))
    }

    pub fn is_total_order(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.leq(x, y) || self.leq(y, x)))
    }

    pub fn oplus_rows(&self) -> Vec<Vec<usize>> {
        self.oplus.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn neg_table(&self) -> &[usize] {
        &self.neg
    }

    /// FNV-1a over the tables; identifies an algebra for [`crate::lu::GoodSequence`].
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |v: usize| {
            for b in (v as u64).to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        };
        eat(self.n);
        eat(self.zero);
        self.oplus
            .iter()
            .chain(self.neg.iter())
            .for_each(|&v| eat(v));
        h
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axiom {
    OplusCommutative,
    OplusAssociative,
    ZeroIdentity,
    Involution,
    AbsorbingOne,
    /// `(x* ⊕ y)* ⊕ y = (y* ⊕ x)* ⊕ x`
    Lukasiewicz,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

/// Checks the MV axioms on all tuples. Reports the first witness per axiom;
/// an empty report means the table is an MV-algebra.
pub fn validate_mv(a: &TableAlgebra) -> Vec<AxiomViolation> {
    let n = a.size();
    let mut out = Vec::new();
    let mut report = |axiom, witness: Vec<usize>| {
        out.push(AxiomViolation { axiom, witness });
    };
    let first_pair = |p: &dyn Fn(usize, usize) -> bool| {
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| !p(x, y))
    };
    if let Some((x, y)) = first_pair(&|x, y| a.oplus(x, y) == a.oplus(y, x)) {
        report(Axiom::OplusCommutative, vec![x, y]);
    }
    'assoc: for x in 0..n {
        for y in 0..n {
            let xy = a.oplus(x, y);
            for z in 0..n {
                if a.oplus(xy, z) != a.oplus(x, a.oplus(y, z)) {
                    report(Axiom::OplusAssociative, vec![x, y, z]);
                    break 'assoc;
                }
            }
        }
    }
    if let Some(x) = (0..n).find(|&x| a.oplus(x, a.zero()) != x) {
        report(Axiom::ZeroIdentity, vec![x]);
    }
    if let Some(x) = (0..n).find(|&x| a.neg(a.neg(x)) != x) {
        report(Axiom::Involution, vec![x]);
    }
    if let Some(x) = (0..n).find(|&x| a.oplus(x, a.one()) != a.one()) {
        report(Axiom::AbsorbingOne, vec![x]);
    }
    let luk = |x: usize, y: usize| a.oplus(a.neg(a.oplus(a.neg(x), y)), y);
    if let Some((x, y)) = first_pair(&|x, y| luk(x, y) == luk(y, x)) {
        report(Axiom::Lukasiewicz, vec![x, y]);
    }
    out
}

pub fn is_mv(a: &TableAlgebra) -> bool {
    validate_mv(a).is_empty()
}

/// `[0,a]` with `x ⊕_a y = (x ⊕ y) ∧ a` and `x^{*a} = x* ⊙ a`.
#[derive(Clone, Debug)]
pub struct IntervalAlgebra {
    pub table: TableAlgebra,
    /// Parent index of each interval element, ascending.
    pub members: Vec<usize>,
    pub bound: usize,
}

impl IntervalAlgebra {
    pub fn parent_of(&self, local: usize) -> usize {
        self.members[local]
    }

    pub fn local_of(&self, parent: usize) -> Option<usize> {
        self.members.binary_search(&parent).ok()
    }
}

pub fn interval_algebra(a: &TableAlgebra, bound: usize) -> Result<IntervalAlgebra> {
    if bound >= a.size() {
        return Err(Error::ElementNotInAlgebra);
    }
    let members: Vec<usize> = (0..a.size()).filter(|&x| a.leq(x, bound)).collect();
    let local = |p: usize| members.binary_search(&p).map_err(|_| p);
    let m = members.len();
    let mut oplus = Vec::with_capacity(m * m);
    for &x in &members {
        for &y in &members {
            let z = a.meet(a.oplus(x, y), bound);
            oplus.push(local(z).map_err(|p| {
                Error::InvalidTable(format!("interval not closed under oplus at {p}"))
            })?);
        }
    }
    let mut neg = Vec::with_capacity(m);
    for &x in &members {
        let z = a.odot(a.neg(x), bound);
        neg.push(local(z).map_err(|p| {
            Error::InvalidTable(format!("interval not closed under negation at {p}"))
        })?);
    }
    let zero = local(a.zero()).map_err(|_| Error::InvalidTable("zero above bound".into()))?;
    Ok(IntervalAlgebra {
        table: TableAlgebra::from_flat(oplus, neg, zero)?,
        members,
        bound,
    })
}
