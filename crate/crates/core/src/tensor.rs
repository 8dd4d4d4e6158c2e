//! Bimorphisms, the semisimple tensor product of function algebras, the
//! factor embeddings, the universal factorization and the Γ-commutation
//! check.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lu::{gamma, tensor_lu, LuGroup};
use crate::mv::function::{
    generate_subalgebra, Derivation, FnAlgebra, FnElement, FnKind, Membership, ValueSet,
};
use crate::mv::hom::{hom_enumerate_filtered, is_linear, iso_check_fn, Homomorphism};
use crate::mv::table::{interval_algebra, IntervalAlgebra, TableAlgebra};

/// Which condition a candidate bimorphism breaks, and where.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BimorphismViolation {
    /// The map `x ↦ β(x, fixed)` (left slot) or `x ↦ β(fixed, x)` (right
    /// slot) is not linear.
    NotLinear {
        slot: Slot,
        fixed: usize,
        x: usize,
        y: usize,
    },
    NotMeetPreserving {
        slot: Slot,
        fixed: usize,
        x: usize,
        y: usize,
    },
    NotJoinPreserving {
        slot: Slot,
        fixed: usize,
        x: usize,
        y: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Slot {
    Left,
    Right,
}

fn check_slot(
    src: &TableAlgebra,
    target: &TableAlgebra,
    slice: &[usize],
    slot: Slot,
    fixed: usize,
) -> Option<BimorphismViolation> {
    if !is_linear(slice, src, target) {
        let (x, y) = (0..src.size())
            .flat_map(|x| (0..src.size()).map(move |y| (x, y)))
            .find(|&(x, y)| {
                src.leq(x, src.neg(y))
                    && !(target.leq(slice[x], target.neg(slice[y]))
                        && slice[src.oplus(x, y)] == target.oplus(slice[x], slice[y]))
            })
            .expect("nonlinear map has a witness");
        return Some(BimorphismViolation::NotLinear { slot, fixed, x, y });
    }
    for x in 0..src.size() {
        for y in 0..src.size() {
            if slice[src.meet(x, y)] != target.meet(slice[x], slice[y]) {
                return Some(BimorphismViolation::NotMeetPreserving { slot, fixed, x, y });
            }
            if slice[src.join(x, y)] != target.join(slice[x], slice[y]) {
                return Some(BimorphismViolation::NotJoinPreserving { slot, fixed, x, y });
            }
        }
    }
    None
}

/// Checks linearity (partial-sum additivity) and lattice preservation in each
/// slot. `table` is indexed `a * |B| + b`.
pub fn check_bimorphism(
    a: &TableAlgebra,
    b: &TableAlgebra,
    c: &TableAlgebra,
    table: &[usize],
) -> Option<BimorphismViolation> {
    let nb = b.size();
    for y in 0..nb {
        let slice: Vec<usize> = (0..a.size()).map(|x| table[x * nb + y]).collect();
        if let Some(v) = check_slot(a, c, &slice, Slot::Left, y) {
            return Some(v);
        }
    }
    for x in 0..a.size() {
        if let Some(v) = check_slot(b, c, &table[x * nb..(x + 1) * nb], Slot::Right, x) {
            return Some(v);
        }
    }
    None
}

/// A map `A × B → C` between finite algebras, tabulated `a * |B| + b`.
#[derive(Clone, Debug)]
pub struct Bimorphism<'a> {
    pub left: &'a TableAlgebra,
    pub right: &'a TableAlgebra,
    pub target: &'a TableAlgebra,
    pub table: Vec<usize>,
}

impl Bimorphism<'_> {
    pub fn at(&self, a: usize, b: usize) -> usize {
        self.table[a * self.right.size() + b]
    }

    pub fn is_bimorphism(&self) -> Result<(), BimorphismViolation> {
        match check_bimorphism(self.left, self.right, self.target, &self.table) {
            Some(v) => Err(v),
            None => Ok(()),
        }
    }
}

/// Every bimorphism `A × B → C`, by backtracking over the rows `β(a, ·)`,
/// each of which must be a linear lattice map `B → C`. `budget` caps the
/// search nodes.
pub fn bimorphism_enumerate(
    a: &TableAlgebra,
    b: &TableAlgebra,
    c: &TableAlgebra,
    budget: usize,
) -> Result<Vec<Vec<usize>>> {
    // Candidate rows: linear, lattice preserving maps B → C.
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut nodes = 0usize;
    let mut cur = vec![0; b.size()];
    fn rec(
        b: &TableAlgebra,
        c: &TableAlgebra,
        i: usize,
        cur: &mut Vec<usize>,
        rows: &mut Vec<Vec<usize>>,
        nodes: &mut usize,
        budget: usize,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        if i == b.size() {
            if check_slot(b, c, cur, Slot::Right, 0).is_none() {
                rows.push(cur.clone());
            }
            return Ok(());
        }
        for y in 0..c.size() {
            cur[i] = y;
            // Monotonicity against already chosen entries.
            let ok = (0..i)
                .all(|j| (!b.leq(j, i) || c.leq(cur[j], y)) && (!b.leq(i, j) || c.leq(y, cur[j])));
            if ok {
                rec(b, c, i + 1, cur, rows, nodes, budget)?;
            }
        }
        Ok(())
    }
    rec(b, c, 0, &mut cur, &mut rows, &mut nodes, budget)?;
    let mut out = Vec::new();
    let mut choice = vec![0usize; a.size()];
    fn pick(
        a: &TableAlgebra,
        b: &TableAlgebra,
        c: &TableAlgebra,
        rows: &[Vec<usize>],
        i: usize,
        choice: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        nodes: &mut usize,
        budget: usize,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        if i == a.size() {
            let table: Vec<usize> = choice
                .iter()
                .flat_map(|&r| rows[r].iter().copied())
                .collect();
            if check_bimorphism(a, b, c, &table).is_none() {
                out.push(table);
            }
            return Ok(());
        }
        for r in 0..rows.len() {
            choice[i] = r;
            let ok = (0..i).all(|j| {
                let (rj, ri) = (&rows[choice[j]], &rows[r]);
                (0..b.size()).all(|y| {
                    (!a.leq(j, i) || c.leq(rj[y], ri[y])) && (!a.leq(i, j) || c.leq(ri[y], rj[y]))
                })
            });
            if ok {
                pick(a, b, c, rows, i + 1, choice, out, nodes, budget)?;
            }
        }
        Ok(())
    }
    pick(a, b, c, &rows, 0, &mut choice, &mut out, &mut nodes, budget)?;
    Ok(out)
}

/// `A ⊗ B` as the subalgebra of `[0,1]^{X×Y}` generated by
/// `γ(a,b)(x,y) = a(x)·b(y)`.
#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    pub left: FnAlgebra,
    pub right: FnAlgebra,
    pub algebra: FnAlgebra,
    /// Index of `γ(a,b)` at `a * |B| + b`; extensional tensors only.
    pub generator_of: Option<Vec<usize>>,
}

impl TensorAlgebra {
    pub fn gen(&self, a: &FnElement, b: &FnElement) -> FnElement {
        FnElement::outer(a, b)
    }

    /// Table index of `γ(a,b)` for element indices of the factors.
    pub fn gamma_index(&self, a: usize, b: usize) -> usize {
        let nb = self.right.size().expect("extensional tensor");
        self.generator_of.as_ref().expect("extensional tensor")[a * nb + b]
    }

    pub fn table(&self) -> Result<&TableAlgebra> {
        self.algebra.table()
    }

    /// `γ` as a bimorphism into the tensor.
    pub fn gamma_bimorphism(&self) -> Result<Bimorphism<'_>> {
        Ok(Bimorphism {
            left: self.left.table()?,
            right: self.right.table()?,
            target: self.algebra.table()?,
            table: self
                .generator_of
                .clone()
                .ok_or(Error::IntensionalNotMaterializable)?,
        })
    }
}

fn pair_carrier(a: &FnAlgebra, b: &FnAlgebra) -> Vec<String> {
    a.carrier()
        .iter()
        .flat_map(|x| b.carrier().iter().map(move |y| format!("({x},{y})")))
        .collect()
}

/// The product of the value sets of two classes.
fn value_product(x: ValueSet, y: ValueSet) -> ValueSet {
    use ValueSet::*;
    match (x, y) {
        (Rational, _) | (_, Rational) => Rational,
        (
            Adic {
                base: b1,
                scale: s1,
            },
            Adic {
                base: b2,
                scale: s2,
            },
        ) => ValueSet::adic(b1 * b2, s1 * s2),
        (Adic { base, scale }, Finite { den }) | (Finite { den }, Adic { base, scale }) => {
            ValueSet::adic(base, scale * den)
        }
        (Finite { den: d1 }, Finite { den: d2 }) => Finite { den: d1 * d2 },
    }
}

/// Classes and value sets of a finite function algebra: it is the full
/// product of the chains `Ł_d` over its inseparability classes.
pub fn finite_membership(a: &FnAlgebra) -> Result<Membership> {
    let classes = a.inseparability_classes()?;
    let elems = a.elements()?;
    let values = classes
        .iter()
        .map(|c| ValueSet::Finite {
            den: elems
                .iter()
                .fold(1, |acc, e| crate::rational::lcm(acc, e.0[c[0]].denom())),
        })
        .collect();
    Ok(Membership { classes, values })
}

fn membership_of(a: &FnAlgebra) -> Result<Membership> {
    match a.kind() {
        FnKind::Intensional(i) => Ok(i.membership.clone()),
        FnKind::Extensional(_) => finite_membership(a),
    }
}

/// Semisimple tensor product. Extensional factors are tensored by running the
/// closure engine on all `γ(a,b)`; if either factor is intensional the result
/// is intensional, with membership read off from the class structure of the
/// factors (values on class `K × L` range over the products of the factor
/// value sets).
pub fn tensor_ss(a: &FnAlgebra, b: &FnAlgebra, budget: usize) -> Result<TensorAlgebra> {
    let carrier = pair_carrier(a, b);
    if a.is_extensional() && b.is_extensional() {
        let (ea, eb) = (a.elements()?, b.elements()?);
        if ea.len() < 2 || eb.len() < 2 {
            return Err(Error::DegenerateAlgebra);
        }
        let gens: Vec<FnElement> = ea
            .iter()
            .flat_map(|x| eb.iter().map(move |y| FnElement::outer(x, y)))
            .collect();
        let algebra = generate_subalgebra(carrier, gens.clone(), budget)?;
        let generator_of = gens
            .iter()
            .map(|g| algebra.index_of(g).expect("generator in closure"))
            .collect();
        return Ok(TensorAlgebra {
            left: a.clone(),
            right: b.clone(),
            algebra,
            generator_of: Some(generator_of),
        });
    }
    let (ma, mb) = (membership_of(a)?, membership_of(b)?);
    let nb = b.points();
    let mut classes = Vec::new();
    let mut values = Vec::new();
    for (ka, va) in ma.classes.iter().zip(&ma.values) {
        for (kb, vb) in mb.classes.iter().zip(&mb.values) {
            classes.push(
                ka.iter()
                    .flat_map(|&x| kb.iter().map(move |&y| x * nb + y))
                    .collect::<Vec<_>>(),
            );
            values.push(value_product(*va, *vb));
        }
    }
    let mut gens = Vec::new();
    for x in a.generators() {
        for y in b.generators() {
            gens.push(FnElement::outer(x, y));
        }
    }
    let algebra = FnAlgebra::intensional(carrier, Membership { classes, values }, gens)?;
    Ok(TensorAlgebra {
        left: a.clone(),
        right: b.clone(),
        algebra,
        generator_of: None,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    A,
    B,
}

/// `ι_A(a) = γ(a, 1)` or `ι_B(b) = γ(1, b)`, checked to be an injective
/// homomorphism.
pub fn iota(t: &TensorAlgebra, side: Side) -> Result<Homomorphism> {
    let (ta, tb, tt) = (t.left.table()?, t.right.table()?, t.table()?);
    let (src, map): (&TableAlgebra, Vec<usize>) = match side {
        Side::A => (
            ta,
            (0..ta.size()).map(|x| t.gamma_index(x, tb.one())).collect(),
        ),
        Side::B => (
            tb,
            (0..tb.size()).map(|y| t.gamma_index(ta.one(), y)).collect(),
        ),
    };
    let h = Homomorphism::new(src.size(), tt.size(), map);
    if !h.is_homomorphism(src, tt) {
        return Err(Error::EmbeddingFailed(format!(
            "{side:?}: not a homomorphism"
        )));
    }
    if !h.is_injective() {
        return Err(Error::EmbeddingFailed(format!("{side:?}: not injective")));
    }
    Ok(h)
}

/// The homomorphism `ω: A ⊗ B → [0, β(1,1)]` with `ω ∘ γ = β`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub interval: IntervalAlgebra,
    /// Into the interval algebra's own indices.
    pub omega: Homomorphism,
    /// `omega` followed by the inclusion of the interval into `C`.
    pub omega_in_target: Vec<usize>,
    /// Number of homomorphisms into the interval agreeing with `β` on the
    /// generators; `Some(1)` when uniqueness was checked and holds.
    pub agreeing_homs: Option<usize>,
}

/// Computes `ω` along the derivations of the tensor elements and checks it:
/// it must be a homomorphism into the interval, `ω ∘ γ = β` on every pair,
/// and (when `check_uniqueness`) it must be the only such homomorphism.
pub fn universal_factorization(
    t: &TensorAlgebra,
    beta: &Bimorphism<'_>,
    check_uniqueness: bool,
    budget: usize,
) -> Result<Factorization> {
    if let Err(v) = beta.is_bimorphism() {
        return Err(Error::NotABimorphism(format!("{v:?}")));
    }
    let c = beta.target;
    let tt = t.table()?;
    let ds = t
        .algebra
        .derivations()
        .ok_or(Error::IntensionalNotMaterializable)?;
    let order = t.algebra.build_order().expect("extensional tensor");
    let nb = t.right.size()?;
    let top = beta.at(t.left.table()?.one(), t.right.table()?.one());
    let mut omega = vec![usize::MAX; tt.size()];
    for &x in order {
        omega[x] = match ds[x] {
            Derivation::Zero => c.zero(),
            Derivation::Generator(k) => beta.at(k / nb, k % nb),
            Derivation::Neg(y) => c.odot(c.neg(omega[y]), top),
            Derivation::Oplus(y, z) => c.meet(c.oplus(omega[y], omega[z]), top),
        };
    }
    let interval = interval_algebra(c, top)?;
    let local = omega
        .iter()
        .map(|&v| {
            interval
                .local_of(v)
                .ok_or_else(|| Error::FactorizationInconsistent(format!("image {v} above β(1,1)")))
        })
        .collect::<Result<Vec<_>>>()?;
    let hom = Homomorphism::new(tt.size(), interval.table.size(), local);
    if !hom.is_homomorphism(tt, &interval.table) {
        return Err(Error::FactorizationInconsistent(
            "ω is not a homomorphism into the interval".into(),
        ));
    }
    for a in 0..t.left.size()? {
        for b in 0..nb {
            if omega[t.gamma_index(a, b)] != beta.at(a, b) {
                return Err(Error::FactorizationInconsistent(format!(
                    "ω(γ({a},{b})) differs from β({a},{b})"
                )));
            }
        }
    }
    let agreeing_homs = if check_uniqueness {
        let gens = t.generator_of.as_ref().expect("extensional tensor");
        let mut is_gen = vec![false; tt.size()];
        for &g in gens {
            is_gen[g] = true;
        }
        let allowed = |x: usize, y: usize| !is_gen[x] || hom.map[x] == y;
        let all = hom_enumerate_filtered(tt, &interval.table, &allowed, budget)?;
        if all.len() != 1 || all[0] != hom {
            return Err(Error::FactorizationInconsistent(format!(
                "{} homomorphisms agree with β on the generators",
                all.len()
            )));
        }
        Some(all.len())
    } else {
        None
    };
    Ok(Factorization {
        interval,
        omega: hom,
        omega_in_target: omega,
        agreeing_homs,
    })
}

/// Both sides of `Γ(G) ⊗ Γ(H) ≅ Γ(G ⊗ H)` and the comparison.
#[derive(Clone, Debug)]
pub struct CommutationReport {
    pub lhs_size: usize,
    pub rhs_size: usize,
    pub isomorphic: bool,
    /// `γ(a,b) ↦ a ⊗ b` extended to the whole tensor, on table indices.
    pub witness: Vec<usize>,
}

/// Computes `L = Γ(G) ⊗ Γ(H)` by closure and `R = Γ(G ⊗ H)` by integer
/// arithmetic, then checks that the outer-product bimorphism induces an
/// isomorphism `L → R` and that the isomorphism search agrees.
pub fn gamma_tensor_commutes(g: &LuGroup, h: &LuGroup, budget: usize) -> Result<CommutationReport> {
    let (gg, gh) = (gamma(g, budget)?, gamma(h, budget)?);
    let lhs = tensor_ss(&gg.algebra, &gh.algebra, budget)?;
    let gr = gamma(&tensor_lu(g, h, budget)?, budget)?;
    let searched = iso_check_fn(&lhs.algebra, &gr.algebra, budget)?;
    let (na, nb) = (gg.table().size(), gh.table().size());
    let mut table = Vec::with_capacity(na * nb);
    for a in 0..na {
        for b in 0..nb {
            let x = gg.coords(a).outer(&gh.coords(b));
            table
                .push(gr.index_of_coords(&x).ok_or_else(|| {
                    Error::IsoNotFound(format!("{:?} outside the unit box", x.0))
                })?);
        }
    }
    let beta = Bimorphism {
        left: gg.table(),
        right: gh.table(),
        target: gr.table(),
        table,
    };
    let f = universal_factorization(&lhs, &beta, false, budget)?;
    let witness = f.omega_in_target;
    let hom = Homomorphism::new(lhs.table()?.size(), gr.table().size(), witness.clone());
    let isomorphic = searched.is_isomorphic() && hom.is_bijective();
    if !isomorphic {
        return Err(Error::IsoNotFound(format!(
            "search: {searched:?}, outer-product map bijective: {}",
            hom.is_bijective()
        )));
    }
    Ok(CommutationReport {
        lhs_size: lhs.table()?.size(),
        rhs_size: gr.table().size(),
        isomorphic,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mv::hom::iso_check;
    use crate::rational::Rat01;

    fn chain_product_table(
        m: usize,
        n: usize,
    ) -> (TableAlgebra, TableAlgebra, TableAlgebra, Vec<usize>) {
        let (a, b, c) = (
            TableAlgebra::chain(m),
            TableAlgebra::chain(n),
            TableAlgebra::chain(m * n),
        );
        let mut table = Vec::new();
        for x in 0..=m {
            for y in 0..=n {
                table.push(x * y);
            }
        }
        (a, b, c, table)
    }

    #[test]
    fn product_map_is_a_bimorphism() {
        let (a, b, c, table) = chain_product_table(2, 3);
        assert!(check_bimorphism(&a, &b, &c, &table).is_none());
    }

    #[test]
    fn constant_one_is_not() {
        let (a, b, c, _) = chain_product_table(2, 3);
        let table = vec![c.one(); a.size() * b.size()];
        assert!(matches!(
            check_bimorphism(&a, &b, &c, &table),
            Some(BimorphismViolation::NotLinear { .. })
        ));
    }

    #[test]
    fn odot_is_not() {
        let a = TableAlgebra::chain(2);
        let table: Vec<usize> = (0..9).map(|i| a.odot(i / 3, i % 3)).collect();
        let v = check_bimorphism(&a, &a, &a, &table).unwrap();
        assert!(matches!(v, BimorphismViolation::NotLinear { .. }));
    }

    #[test]
    fn chain_tensors() {
        let t = tensor_ss(&FnAlgebra::chain(2), &FnAlgebra::chain(3), 1000).unwrap();
        assert_eq!(t.algebra.size().unwrap(), 7);
        assert!(iso_check(t.table().unwrap(), &TableAlgebra::chain(6), 1000)
            .unwrap()
            .is_isomorphic());
        let t = tensor_ss(&FnAlgebra::chain(2), &FnAlgebra::chain(2), 1000).unwrap();
        assert_eq!(t.algebra.size().unwrap(), 5);
        assert!(t.gamma_bimorphism().unwrap().is_bimorphism().is_ok());
    }

    #[test]
    fn embeddings() {
        let t = tensor_ss(&FnAlgebra::chain(2), &FnAlgebra::chain(3), 1000).unwrap();
        let ia = iota(&t, Side::A).unwrap();
        assert_eq!(
            ia.map[t.left.table().unwrap().one()],
            t.table().unwrap().one()
        );
        let half = t
            .left
            .index_of(&FnElement(vec![Rat01::new(1, 2).unwrap()]))
            .unwrap();
        assert_eq!(
            t.algebra.element(ia.map[half]).0,
            vec![Rat01::new(1, 2).unwrap()]
        );
        assert!(iota(&t, Side::B).is_ok());
    }

    #[test]
    fn factorization_of_product_map_and_of_gamma() {
        let t = tensor_ss(&FnAlgebra::chain(2), &FnAlgebra::chain(3), 1000).unwrap();
        let (ta, tb) = (t.left.table().unwrap(), t.right.table().unwrap());
        let c = TableAlgebra::chain(6);
        let mut table = Vec::new();
        for x in 0..ta.size() {
            for y in 0..tb.size() {
                let v = t.left.element(x).0[0].mul(t.right.element(y).0[0]);
                table.push((v.numer() * (6 / v.denom())) as usize);
            }
        }
        let beta = Bimorphism {
            left: ta,
            right: tb,
            target: &c,
            table,
        };
        let f = universal_factorization(&t, &beta, true, 100_000).unwrap();
        assert!(Homomorphism::new(7, 7, f.omega_in_target.clone()).is_bijective());
        let g = t.gamma_bimorphism().unwrap();
        let f = universal_factorization(&t, &g, true, 100_000).unwrap();
        assert_eq!(f.omega_in_target, (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn commutation_small() {
        let r = gamma_tensor_commutes(
            &LuGroup::integers(2).unwrap(),
            &LuGroup::integers(3).unwrap(),
            100_000,
        )
        .unwrap();
        assert_eq!((r.lhs_size, r.rhs_size), (7, 7));
        let g = LuGroup::new(vec![2, 3]).unwrap();
        let r = gamma_tensor_commutes(&g, &LuGroup::integers(2).unwrap(), 100_000).unwrap();
        assert_eq!(r.lhs_size, 35);
    }

    #[test]
    fn intensional_tensor_membership() {
        let t = tensor_ss(&FnAlgebra::dyadic(1), &FnAlgebra::chain(3), 1000).unwrap();
        let third = FnElement(vec![Rat01::new(1, 3).unwrap()]);
        let twelfth = FnElement(vec![Rat01::new(1, 12).unwrap()]);
        let fifth = FnElement(vec![Rat01::new(1, 5).unwrap()]);
        assert!(t.algebra.contains(&third));
        assert!(t.algebra.contains(&twelfth));
        assert!(!t.algebra.contains(&fifth));
    }

    #[test]
    fn enumerated_bimorphisms_are_bimorphisms() {
        let (a, b, c) = (
            TableAlgebra::chain(1),
            TableAlgebra::chain(2),
            TableAlgebra::chain(2),
        );
        let all = bimorphism_enumerate(&a, &b, &c, 1_000_000).unwrap();
        assert!(!all.is_empty());
        for t in &all {
            assert!(check_bimorphism(&a, &b, &c, t).is_none());
        }
    }
}
