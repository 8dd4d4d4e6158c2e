//! Unital abelian ℓ-groups `(ℤ^k, u)` with the coordinatewise order, the Γ
//! functor, good sequences, and the extension of bimorphisms to
//! ℓu-bilinear maps.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mv::function::{FnAlgebra, FnElement};
use crate::mv::hom::{iso_check, Homomorphism, IsoResult};
use crate::mv::ideal::semisimple_representation;
use crate::mv::table::TableAlgebra;
use crate::rational::Rat01;
use crate::tensor::{check_bimorphism, BimorphismViolation};

/// `ℤ^k` with the coordinatewise order and strong unit `u`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LuGroup {
    unit: Vec<i128>,
}

/// An element of some `ℤ^k`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupElement(pub Vec<i128>);

impl GroupElement {
    pub fn zero(rank: usize) -> Self {
        GroupElement(vec![0; rank])
    }

    fn zip(&self, o: &Self, f: impl Fn(i128, i128) -> i128) -> Self {
        GroupElement(self.0.iter().zip(&o.0).map(|(&a, &b)| f(a, b)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        GroupElement(self.0.iter().map(|a| -a).collect())
    }

    pub fn meet(&self, o: &Self) -> Self {
        self.zip(o, core::cmp::min)
    }

    pub fn join(&self, o: &Self) -> Self {
        self.zip(o, core::cmp::max)
    }

    pub fn scale(&self, n: i128) -> Self {
        GroupElement(self.0.iter().map(|a| a * n).collect())
    }

    pub fn leq(&self, o: &Self) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn positive_part(&self) -> Self {
        GroupElement(self.0.iter().map(|&a| a.max(0)).collect())
    }

    pub fn negative_part(&self) -> Self {
        GroupElement(self.0.iter().map(|&a| (-a).max(0)).collect())
    }

    /// `x ⊗ y` in `ℤ^{k·l}`, `x` major.
    pub fn outer(&self, o: &Self) -> Self {
        GroupElement(
            self.0
                .iter()
                .flat_map(|&a| o.0.iter().map(move |&b| a * b))
                .collect(),
        )
    }
}

impl LuGroup {
    pub fn new(unit: Vec<i128>) -> Result<Self> {
        if unit.is_empty() {
            return Err(Error::InvalidGroup("rank must be positive".into()));
        }
        if let Some(u) = unit.iter().find(|&&u| u < 1) {
            return Err(Error::InvalidGroup(format!(
                "unit coordinate {u} is not positive"
            )));
        }
        Ok(LuGroup { unit })
    }

    /// `(ℤ, n)`.
    pub fn integers(n: i128) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn rank(&self) -> usize {
        self.unit.len()
    }

    pub fn unit(&self) -> GroupElement {
        GroupElement(self.unit.clone())
    }

    pub fn unit_coords(&self) -> &[i128] {
        &self.unit
    }

    /// `∏ (u_i + 1)`, or `None` on overflow.
    pub fn box_size(&self) -> Option<usize> {
        self.unit.iter().try_fold(1usize, |acc, &u| {
            acc.checked_mul(usize::try_from(u).ok()?.checked_add(1)?)
        })
    }

    /// The unit box `[0,u]` in lexicographic order.
    pub fn unit_box(&self) -> Vec<GroupElement> {
        let mut out = vec![GroupElement(Vec::new())];
        for &u in &self.unit {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=u).map(move |x| {
                        let mut v = prefix.0.clone();
                        v.push(x);
                        GroupElement(v)
                    })
                })
                .collect();
        }
        out
    }

    /// Least `n >= 0` with `x <= n·u`.
    pub fn strong_unit_multiple(&self, x: &GroupElement) -> i128 {
        x.0.iter()
            .zip(&self.unit)
            .map(|(&xi, &ui)| if xi <= 0 { 0 } else { (xi + ui - 1) / ui })
            .max()
            .unwrap_or(0)
    }
}

/// `Γ(G,u)` together with the coordinates of each element.
#[derive(Clone, Debug)]
pub struct GammaAlgebra {
    pub group: LuGroup,
    pub algebra: FnAlgebra,
}

impl GammaAlgebra {
    pub fn coords(&self, idx: usize) -> GroupElement {
        let e = self.algebra.element(idx);
        GroupElement(
            e.0.iter()
                .zip(self.group.unit_coords())
                .map(|(v, &u)| v.numer() * (u / v.denom()))
                .collect(),
        )
    }

    /// Index of a unit-box element.
    pub fn index_of_coords(&self, x: &GroupElement) -> Option<usize> {
        let values =
            x.0.iter()
                .zip(self.group.unit_coords())
                .map(|(&xi, &u)| Rat01::new(xi, u).ok())
                .collect::<Option<Vec<_>>>()?;
        self.algebra.index_of(&FnElement(values))
    }

    pub fn table(&self) -> &TableAlgebra {
        self.algebra
            .table()
            .expect("gamma algebras are extensional")
    }
}

/// `Γ(G,u) = [0,u]` with `x ⊕ y = u ∧ (x + y)` and `x* = u − x`, rescaled to
/// `x_i / u_i` on a `k`-point carrier.
pub fn gamma(g: &LuGroup, budget: usize) -> Result<GammaAlgebra> {
    let size = g.box_size().ok_or(Error::BudgetExceeded(budget))?;
    if size > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    let boxed = g.unit_box();
    let u = g.unit();
    // Mixed-radix position of a box element in `boxed`.
    let position = |x: &GroupElement| {
        x.0.iter()
            .zip(g.unit_coords())
            .fold(0usize, |acc, (&xi, &ui)| {
                acc * (ui as usize + 1) + xi as usize
            })
    };
    let mut oplus = Vec::with_capacity(size * size);
    for x in &boxed {
        for y in &boxed {
            oplus.push(position(&x.add(y).meet(&u)));
        }
    }
    let neg = boxed.iter().map(|x| position(&u.sub(x))).collect();
    let elements = boxed
        .iter()
        .map(|x| {
            FnElement(
                x.0.iter()
                    .zip(g.unit_coords())
                    .map(|(&xi, &ui)| Rat01::new(xi, ui).expect("box element"))
                    .collect(),
            )
        })
        .collect();
    let carrier: Vec<String> = (0..g.rank()).map(|i| format!("g{i}")).collect();
    Ok(GammaAlgebra {
        group: g.clone(),
        algebra: FnAlgebra::from_parts(carrier, elements, oplus, neg)?,
    })
}

/// Row echelon form over ℤ by gcd row operations; returns the nonzero rows
/// sorted by pivot column.
fn integer_echelon(rows: &[Vec<i128>], dim: usize) -> Vec<Vec<i128>> {
    let mut basis: Vec<Vec<i128>> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        while let Some(p) = v.iter().position(|&x| x != 0) {
            let Some(k) = basis
                .iter()
                .position(|b| b[p] != 0 && b[..p].iter().all(|&x| x == 0))
            else {
                basis.push(v);
                basis.sort_by_key(|b| b.iter().position(|&x| x != 0).unwrap());
                break;
            };
            // Extended Euclid on the pivot column, applied to whole rows.
            let (mut a, mut c) = (core::mem::take(&mut basis[k]), v);
            while c[p] != 0 {
                let q = a[p].div_euclid(c[p]);
                for i in 0..dim {
                    a[i] -= q * c[i];
                }
                core::mem::swap(&mut a, &mut c);
            }
            basis[k] = a;
            v = c;
        }
    }
    basis
}

/// True when the given vectors span `ℤ^dim` as a group.
pub fn spans_integer_lattice(vectors: &[GroupElement], dim: usize) -> bool {
    let rows: Vec<Vec<i128>> = vectors.iter().map(|v| v.0.clone()).collect();
    let basis = integer_echelon(&rows, dim);
    basis.len() == dim
        && basis
            .iter()
            .enumerate()
            .all(|(i, b)| b[i].abs() == 1 && b.iter().take(i).all(|&x| x == 0))
}

/// `(G ⊗ H, u_G ⊗ u_H)` in coordinate form, with the generation of
/// `ℤ^{k·l}` by unit-box outer products verified.
pub fn tensor_lu(g: &LuGroup, h: &LuGroup, budget: usize) -> Result<LuGroup> {
    let (bg, bh) = (
        g.box_size().ok_or(Error::BudgetExceeded(budget))?,
        h.box_size().ok_or(Error::BudgetExceeded(budget))?,
    );
    if bg.saturating_mul(bh) > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    let products: Vec<GroupElement> = g
        .unit_box()
        .iter()
        .flat_map(|x| h.unit_box().into_iter().map(move |y| x.outer(&y)))
        .collect();
    let dim = g.rank() * h.rank();
    if !spans_integer_lattice(&products, dim) {
        return Err(Error::InvalidGroup(
            "outer products do not span the lattice".into(),
        ));
    }
    let out = LuGroup::new(g.unit().outer(&h.unit()).0)?;
    debug_assert!(products.iter().all(|p| p.leq(&out.unit())));
    Ok(out)
}

/// A finite sequence `(a_1, …, a_n)` with `a_i ⊕ a_{i+1} = a_i`, trailing
/// zeros removed. Entries are table indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GoodSequence {
    algebra: u64,
    entries: Vec<usize>,
}

impl GoodSequence {
    pub fn new(a: &TableAlgebra, mut entries: Vec<usize>) -> Result<Self> {
        if entries.iter().any(|&x| x >= a.size()) {
            return Err(Error::ElementNotInAlgebra);
        }
        while entries.last() == Some(&a.zero()) {
            entries.pop();
        }
        if let Some(i) =
            (1..entries.len()).find(|&i| a.oplus(entries[i - 1], entries[i]) != entries[i - 1])
        {
            return Err(Error::InvalidGroup(format!(
                "not a good sequence at position {i}"
            )));
        }
        Ok(GoodSequence {
            algebra: a.fingerprint(),
            entries,
        })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Entry `i` (0-based), zero beyond the support.
    pub fn get(&self, a: &TableAlgebra, i: usize) -> usize {
        self.entries.get(i).copied().unwrap_or(a.zero())
    }

    fn check(&self, a: &TableAlgebra) -> Result<()> {
        if self.algebra != a.fingerprint() {
            return Err(Error::MixedAlgebras);
        }
        Ok(())
    }
}

/// `(x)`.
pub fn gs_of(a: &TableAlgebra, x: usize) -> Result<GoodSequence> {
    GoodSequence::new(a, vec![x])
}

/// `c_i = a_i ⊕ (a_{i−1} ⊙ b_1) ⊕ … ⊕ (a_1 ⊙ b_{i−1}) ⊕ b_i`.
pub fn gs_sum(a: &TableAlgebra, s: &GoodSequence, t: &GoodSequence) -> Result<GoodSequence> {
    s.check(a)?;
    t.check(a)?;
    let n = s.entries.len() + t.entries.len();
    // Index 0 stands for the implicit leading 1.
    let at = |q: &GoodSequence, i: usize| if i == 0 { a.one() } else { q.get(a, i - 1) };
    let entries = (1..=n)
        .map(|i| {
            (0..=i).fold(a.zero(), |acc, j| {
                a.oplus(acc, a.odot(at(s, j), at(t, i - j)))
            })
        })
        .collect();
    let out = GoodSequence::new(a, entries)?;
    Ok(out)
}

/// Entrywise order.
pub fn gs_order(a: &TableAlgebra, s: &GoodSequence, t: &GoodSequence) -> Result<bool> {
    s.check(a)?;
    t.check(a)?;
    let n = s.entries.len().max(t.entries.len());
    Ok((0..n).all(|i| a.leq(s.get(a, i), t.get(a, i))))
}

/// Every good sequence of length at most `max_len`.
pub fn good_sequences(a: &TableAlgebra, max_len: usize) -> Vec<GoodSequence> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for seq in &frontier {
            for x in 0..a.size() {
                if x == a.zero() {
                    continue;
                }
                if let Some(&last) = seq.last() {
                    if a.oplus(last, x) != last {
                        continue;
                    }
                }
                let mut s = seq.clone();
                s.push(x);
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.into_iter()
        .map(|e| GoodSequence::new(a, e).expect("constructed good"))
        .collect()
}

/// `Ξ(A)` for a finite semisimple `A`: the group, `Γ(Ξ(A))`, and an
/// isomorphism `Γ(Ξ(A)) → A`.
#[derive(Clone, Debug)]
pub struct Xi {
    pub group: LuGroup,
    pub gamma: GammaAlgebra,
    pub iso: Homomorphism,
    pub iso_inverse: Homomorphism,
}

impl Xi {
    /// The group element a good sequence of `A` stands for.
    pub fn value(&self, s: &GoodSequence) -> GroupElement {
        s.entries
            .iter()
            .fold(GroupElement::zero(self.group.rank()), |acc, &x| {
                acc.add(&self.gamma.coords(self.iso_inverse.map[x]))
            })
    }

    /// The good sequence of `A` for `0 <= g`: `s_i = (g − (i−1)u) ∧ u ∨ 0`.
    pub fn sequence_of(&self, a: &TableAlgebra, g: &GroupElement) -> Result<GoodSequence> {
        let u = self.group.unit();
        let n = self.group.strong_unit_multiple(g);
        let zero = GroupElement::zero(self.group.rank());
        let entries = (0..n)
            .map(|i| {
                let part = g.sub(&u.scale(i)).meet(&u).join(&zero);
                let local = self
                    .gamma
                    .index_of_coords(&part)
                    .expect("clamped into the unit box");
                self.iso.map[local]
            })
            .collect();
        GoodSequence::new(a, entries)
    }
}

pub fn xi(a: &TableAlgebra, budget: usize) -> Result<Xi> {
    if a.is_degenerate() {
        return Err(Error::DegenerateAlgebra);
    }
    let rep = semisimple_representation(a, budget)?;
    let points = rep.algebra.points();
    let elems = rep.algebra.elements()?;
    let unit: Vec<i128> = (0..points)
        .map(|p| {
            elems
                .iter()
                .fold(1, |acc, e| crate::rational::lcm(acc, e.0[p].denom()))
        })
        .collect();
    let group = LuGroup::new(unit)?;
    let gam = gamma(&group, budget)?;
    match iso_check(gam.table(), a, budget)? {
        IsoResult::Isomorphic { forward, inverse } => Ok(Xi {
            group,
            gamma: gam,
            iso: forward,
            iso_inverse: inverse,
        }),
        IsoResult::NotIsomorphic(c) => Err(Error::IsoNotFound(format!("Γ(Ξ(A)) vs A: {c:?}"))),
    }
}

/// The ℓu-bilinear extension `β̄: G × H → L` of a bimorphism
/// `β: Γ(G) × Γ(H) → Γ(L)`.
#[derive(Clone, Debug)]
pub struct LuBilinearMap {
    pub left: GammaAlgebra,
    pub right: GammaAlgebra,
    pub target: GammaAlgebra,
    /// `β(a,b)` for box indices, `a` major.
    pub table: Vec<usize>,
    /// `β̄(e_i, f_j)` for the standard basis vectors.
    pub coefficients: Vec<Vec<GroupElement>>,
}

impl LuBilinearMap {
    /// `Σ g_i h_j β̄(e_i, f_j)`.
    pub fn eval(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let mut acc = GroupElement::zero(self.target.group.rank());
        for (i, &gi) in g.0.iter().enumerate() {
            for (j, &hj) in h.0.iter().enumerate() {
                acc = acc.add(&self.coefficients[i][j].scale(gi * hj));
            }
        }
        acc
    }

    fn box_parts(group: &LuGroup, x: &GroupElement) -> Vec<GroupElement> {
        let u = group.unit();
        let zero = GroupElement::zero(group.rank());
        (0..group.strong_unit_multiple(x))
            .map(|i| x.sub(&u.scale(i)).meet(&u).join(&zero))
            .collect()
    }

    /// `β̄(g,h)` by writing `g = g⁺ − g⁻`, `h = h⁺ − h⁻` as sums of unit-box
    /// elements and applying `β` to each pair of parts.
    pub fn eval_by_decomposition(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let nb = self.right.algebra.size().expect("extensional");
        let beta = |x: &GroupElement, y: &GroupElement| {
            let i = self.left.index_of_coords(x).expect("box element");
            let j = self.right.index_of_coords(y).expect("box element");
            self.target.coords(self.table[i * nb + j])
        };
        let mut acc = GroupElement::zero(self.target.group.rank());
        for (gs, sg) in [(g.positive_part(), 1), (g.negative_part(), -1)] {
            for (hs, sh) in [(h.positive_part(), 1), (h.negative_part(), -1)] {
                for x in Self::box_parts(&self.left.group, &gs) {
                    for y in Self::box_parts(&self.right.group, &hs) {
                        acc = acc.add(&beta(&x, &y).scale(sg * sh));
                    }
                }
            }
        }
        acc
    }
}

/// Extends `β` (given on box indices, `a` major) and verifies the result:
/// the closed form and the decomposition agree on a window around the unit
/// boxes, the restriction to the boxes is `β`, and `β̄(u_G,u_H) <= u_L`.
pub fn extend_bimorphism(
    left: &GammaAlgebra,
    right: &GammaAlgebra,
    target: &GammaAlgebra,
    table: Vec<usize>,
) -> Result<LuBilinearMap> {
    if let Some(v) = check_bimorphism(left.table(), right.table(), target.table(), &table) {
        return Err(Error::NotABimorphism(describe(&v)));
    }
    let basis = |g: &LuGroup, i: usize| {
        let mut v = vec![0; g.rank()];
        v[i] = 1;
        GroupElement(v)
    };
    let nb = right.table().size();
    let coefficients = (0..left.group.rank())
        .map(|i| {
            (0..right.group.rank())
                .map(|j| {
                    let a = left.index_of_coords(&basis(&left.group, i)).unwrap();
                    let b = right.index_of_coords(&basis(&right.group, j)).unwrap();
                    target.coords(table[a * nb + b])
                })
                .collect()
        })
        .collect();
    let map = LuBilinearMap {
        left: left.clone(),
        right: right.clone(),
        target: target.clone(),
        table,
        coefficients,
    };
    for a in 0..left.table().size() {
        for b in 0..nb {
            let (x, y) = (left.coords(a), right.coords(b));
            if map.eval(&x, &y) != target.coords(map.table[a * nb + b]) {
                return Err(Error::NotABimorphism(format!(
                    "extension disagrees with the bimorphism at ({:?},{:?})",
                    x.0, y.0
                )));
            }
        }
    }
    let window = |g: &LuGroup| -> Vec<GroupElement> {
        let u = g.unit();
        g.unit_box()
            .into_iter()
            .flat_map(|x| [x.clone(), x.neg(), x.add(&u), x.sub(&u.scale(2))])
            .collect()
    };
    for x in window(&left.group) {
        for y in window(&right.group) {
            let closed = map.eval(&x, &y);
            if closed != map.eval_by_decomposition(&x, &y) {
                return Err(Error::NotABimorphism(format!(
                    "decomposition disagrees at ({:?},{:?})",
                    x.0, y.0
                )));
            }
        }
    }
    if !map
        .eval(&left.group.unit(), &right.group.unit())
        .leq(&target.group.unit())
    {
        return Err(Error::NotABimorphism("unit bound violated".into()));
    }
    Ok(map)
}

fn describe(v: &BimorphismViolation) -> String {
    format!("{v:?}")
}
