//! Semisimple MV-algebras as algebras of `[0,1] ∩ ℚ`-valued functions on a
//! finite carrier, and the subalgebra closure engine.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::mv::table::TableAlgebra;
use crate::rational::{lcm, Rat01};

/// Default element cap for materializing operations.
pub const DEFAULT_BUDGET: usize = 100_000;

/// A function from carrier points (by position) to `[0,1] ∩ ℚ`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FnElement(pub Vec<Rat01>);

impl FnElement {
    pub fn constant(len: usize, v: Rat01) -> Self {
        FnElement(vec![v; len])
    }

    pub fn zero(len: usize) -> Self {
        Self::constant(len, Rat01::ZERO)
    }

    pub fn one(len: usize) -> Self {
        Self::constant(len, Rat01::ONE)
    }

    pub fn values(&self) -> &[Rat01] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn zip(&self, other: &Self, f: impl Fn(Rat01, Rat01) -> Rat01) -> Self {
        debug_assert_eq!(self.len(), other.len());
        FnElement(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        )
    }

    pub fn oplus(&self, other: &Self) -> Self {
        self.zip(other, Rat01::oplus)
    }

    pub fn odot(&self, other: &Self) -> Self {
        self.zip(other, Rat01::odot)
    }

    pub fn meet(&self, other: &Self) -> Self {
        self.zip(other, Rat01::meet)
    }

    pub fn join(&self, other: &Self) -> Self {
        self.zip(other, Rat01::join)
    }

    /// Pointwise real product.
    pub fn mul(&self, other: &Self) -> Self {
        self.zip(other, Rat01::mul)
    }

    pub fn neg(&self) -> Self {
        FnElement(self.0.iter().map(|v| v.neg()).collect())
    }

    pub fn scale(&self, q: Rat01) -> Self {
        FnElement(self.0.iter().map(|&v| q.mul(v)).collect())
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|v| v.is_zero())
    }

    /// `γ(a,b)(x,y) = a(x)·b(y)` on the product carrier, `x` major.
    pub fn outer(a: &Self, b: &Self) -> Self {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for &x in &a.0 {
            for &y in &b.0 {
                out.push(x.mul(y));
            }
        }
        FnElement(out)
    }

    /// Least common multiple of the value denominators.
    pub fn denominator_lcm(&self) -> i128 {
        self.0.iter().fold(1, |acc, v| lcm(acc, v.denom()))
    }
}

impl core::fmt::Display for FnElement {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Canonical element order: denominator lcm first, then the value vector.
pub fn canonical_cmp(a: &FnElement, b: &FnElement) -> Ordering {
    a.denominator_lcm()
        .cmp(&b.denominator_lcm())
        .then_with(|| a.cmp(b))
}

/// A set of admissible values at one point of an intensional algebra.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ValueSet {
    /// Every rational in `[0,1]`.
    Rational,
    /// `{ m / (scale · base^k) }`; `base = 2, scale = 1` are the dyadics.
    Adic { base: i128, scale: i128 },
    /// `{ m / den }`.
    Finite { den: i128 },
}

impl ValueSet {
    pub const DYADIC: ValueSet = ValueSet::Adic { base: 2, scale: 1 };

    /// `{ m / (scale · base^k) }` in normal form: the base is squarefree and
    /// the scale has no prime factor of the base.
    pub fn adic(base: i128, scale: i128) -> ValueSet {
        let mut rad = 1;
        let (mut n, mut p) = (base, 2);
        while p * p <= n {
            if n % p == 0 {
                rad *= p;
                while n % p == 0 {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            rad *= n;
        }
        let mut scale = scale;
        loop {
            let g = scale.gcd(&rad);
            if g <= 1 {
                break;
            }
            scale /= g;
        }
        ValueSet::Adic { base: rad, scale }
    }

    pub fn contains(&self, v: Rat01) -> bool {
        match *self {
            ValueSet::Rational => true,
            ValueSet::Finite { den } => den % v.denom() == 0,
            ValueSet::Adic { base, scale } => {
                let d = v.denom();
                let mut rest = d / d.gcd(&scale);
                loop {
                    let g = rest.gcd(&base);
                    if g <= 1 {
                        break;
                    }
                    rest /= g;
                }
                rest == 1
            }
        }
    }

    /// Closed under products iff every prime of the scale divides the base.
    pub fn is_product_closed(&self) -> bool {
        match *self {
            ValueSet::Rational => true,
            ValueSet::Adic { base, scale } => {
                let mut rest = scale;
                loop {
                    let g = rest.gcd(&base);
                    if g <= 1 {
                        break;
                    }
                    rest /= g;
                }
                rest == 1
            }
            ValueSet::Finite { den } => den == 1,
        }
    }

    /// The least positive member, when there is one.
    pub fn least_positive(&self) -> Option<Rat01> {
        match *self {
            ValueSet::Rational => None,
            ValueSet::Adic { scale, .. } => Rat01::new(1, scale).ok(),
            ValueSet::Finite { den } => Rat01::new(1, den).ok(),
        }
    }

    /// Set inclusion.
    pub fn is_subset(&self, other: &ValueSet) -> bool {
        match *self {
            ValueSet::Rational => matches!(other, ValueSet::Rational),
            ValueSet::Finite { den } => other.contains(Rat01::new(1, den).expect("positive")),
            ValueSet::Adic { base, scale } => {
                // Checks `1/(scale·base^k)` while the denominator stays small.
                let mut d = scale;
                for _ in 0..=64 {
                    if !other.contains(Rat01::new(1, d).expect("positive")) {
                        return false;
                    }
                    match d.checked_mul(base) {
                        Some(next) if next < (1 << 60) => d = next,
                        _ => break,
                    }
                }
                true
            }
        }
    }
}

/// Membership predicate of an intensional algebra: an element belongs iff it
/// is constant on every class and its value on class `i` lies in `values[i]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Membership {
    pub classes: Vec<Vec<usize>>,
    pub values: Vec<ValueSet>,
}

impl Membership {
    /// Each point its own class, all with the same value set.
    pub fn pointwise(len: usize, values: ValueSet) -> Self {
        Membership {
            classes: (0..len).map(|p| vec![p]).collect(),
            values: vec![values; len],
        }
    }

    pub fn accepts(&self, e: &FnElement) -> bool {
        self.classes.iter().zip(&self.values).all(|(class, vs)| {
            let first = e.0[class[0]];
            class.iter().all(|&p| e.0[p] == first) && vs.contains(first)
        })
    }
}

/// How an element of a generated algebra was first obtained.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Derivation {
    Zero,
    /// Index into the generator list the algebra was built from.
    Generator(usize),
    Neg(usize),
    Oplus(usize, usize),
}

#[derive(Clone, Debug)]
pub struct Extensional {
    elements: Vec<FnElement>,
    index: BTreeMap<FnElement, usize>,
    table: TableAlgebra,
    derivations: Option<Vec<Derivation>>,
    build_order: Vec<usize>,
    generators: Vec<FnElement>,
}

#[derive(Clone, Debug)]
pub struct Intensional {
    pub membership: Membership,
    pub generators: Vec<FnElement>,
}

#[derive(Clone, Debug)]
pub enum FnKind {
    Extensional(Extensional),
    Intensional(Intensional),
}

/// An MV-subalgebra of `[0,1]^carrier`.
#[derive(Clone, Debug)]
pub struct FnAlgebra {
    carrier: Vec<String>,
    kind: FnKind,
}

/// Raw closure output prior to canonical sorting.
struct Raw {
    elements: Vec<FnElement>,
    oplus: Vec<usize>,
    neg: Vec<usize>,
    derivations: Option<Vec<Derivation>>,
    generators: Vec<FnElement>,
}

impl Extensional {
    fn assemble(raw: Raw) -> Result<Self> {
        let n = raw.elements.len();
        let keys: Vec<i128> = raw.elements.iter().map(|e| e.denominator_lcm()).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| {
            keys[a]
                .cmp(&keys[b])
                .then_with(|| raw.elements[a].cmp(&raw.elements[b]))
        });
        let mut new_of = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            new_of[old] = new;
        }
        let mut oplus = vec![0; n * n];
        for (i, &oi) in perm.iter().enumerate() {
            for (j, &oj) in perm.iter().enumerate() {
                oplus[i * n + j] = new_of[raw.oplus[oi * n + oj]];
            }
        }
        let neg = perm.iter().map(|&o| new_of[raw.neg[o]]).collect();
        let zero_old = raw
            .elements
            .iter()
            .position(|e| e.is_zero())
            .ok_or_else(|| Error::NotClosed("no zero element".into()))?;
        let table = TableAlgebra::from_flat(oplus, neg, new_of[zero_old])?;
        let derivations = raw.derivations.map(|ds| {
            perm.iter()
                .map(|&o| match ds[o] {
                    Derivation::Neg(x) => Derivation::Neg(new_of[x]),
                    Derivation::Oplus(x, y) => Derivation::Oplus(new_of[x], new_of[y]),
                    d => d,
                })
                .collect()
        });
        let build_order = (0..n).map(|o| new_of[o]).collect();
        let mut elements = raw.elements;
        let mut sorted = Vec::with_capacity(n);
        for &o in &perm {
            sorted.push(core::mem::replace(&mut elements[o], FnElement(Vec::new())));
        }
        let index = sorted
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Ok(Extensional {
            elements: sorted,
            index,
            table,
            derivations,
            build_order,
            generators: raw.generators,
        })
    }
}

impl FnAlgebra {
    /// Extensional algebra from an explicit element list; the list must
    /// contain 0 and 1 and be closed under ⊕ and ¬.
    pub fn from_elements(carrier: Vec<String>, elements: Vec<FnElement>) -> Result<Self> {
        let len = carrier.len();
        let mut index = BTreeMap::new();
        let mut uniq = Vec::new();
        for e in elements {
            if e.len() != len {
                return Err(Error::InvalidTable(format!(
                    "element has {} values, carrier has {len} points",
                    e.len()
                )));
            }
            if !index.contains_key(&e) {
                index.insert(e.clone(), uniq.len());
                uniq.push(e);
            }
        }
        for c in [FnElement::zero(len), FnElement::one(len)] {
            if !index.contains_key(&c) {
                return Err(Error::NotClosed(format!("constant {:?} missing", c.0)));
            }
        }
        let n = uniq.len();
        let find = |e: FnElement| {
            index
                .get(&e)
                .copied()
                .ok_or_else(|| Error::NotClosed(format!("{:?} missing", e.0)))
        };
        let mut oplus = Vec::with_capacity(n * n);
        for x in &uniq {
            for y in &uniq {
                oplus.push(find(x.oplus(y))?);
            }
        }
        let neg = uniq
            .iter()
            .map(|x| find(x.neg()))
            .collect::<Result<Vec<_>>>()?;
        let ext = Extensional::assemble(Raw {
            elements: uniq,
            oplus,
            neg,
            derivations: None,
            generators: Vec::new(),
        })?;
        Ok(FnAlgebra {
            carrier,
            kind: FnKind::Extensional(ext),
        })
    }

    /// Builds an extensional algebra whose operations are computed by the
    /// caller (e.g. by integer arithmetic) rather than by lookup.
    pub(crate) fn from_parts(
        carrier: Vec<String>,
        elements: Vec<FnElement>,
        oplus: Vec<usize>,
        neg: Vec<usize>,
    ) -> Result<Self> {
        let ext = Extensional::assemble(Raw {
            elements,
            oplus,
            neg,
            derivations: None,
            generators: Vec::new(),
        })?;
        Ok(FnAlgebra {
            carrier,
            kind: FnKind::Extensional(ext),
        })
    }

    pub fn intensional(
        carrier: Vec<String>,
        membership: Membership,
        generators: Vec<FnElement>,
    ) -> Result<Self> {
        let len = carrier.len();
        let covered: usize = membership.classes.iter().map(|c| c.len()).sum();
        if membership.classes.len() != membership.values.len()
            || covered != len
            || membership.classes.iter().flatten().any(|&p| p >= len)
            || membership.classes.iter().any(|c| c.is_empty())
        {
            return Err(Error::InvalidTable(
                "membership classes must partition the carrier".into(),
            ));
        }
        for c in [FnElement::zero(len), FnElement::one(len)] {
            if !membership.accepts(&c) {
                return Err(Error::NotClosed("constants rejected by membership".into()));
            }
        }
        if let Some(g) = generators
            .iter()
            .find(|g| g.len() != len || !membership.accepts(g))
        {
            return Err(Error::NotClosed(format!("generator {:?} rejected", g.0)));
        }
        Ok(FnAlgebra {
            carrier,
            kind: FnKind::Intensional(Intensional {
                membership,
                generators,
            }),
        })
    }

    /// `Ł_n` on a single point.
    pub fn chain(n: usize) -> Self {
        assert!(n >= 1);
        let elements = (0..=n)
            .map(|k| FnElement(vec![Rat01::new(k as i128, n as i128).unwrap()]))
            .collect();
        Self::from_elements(vec!["p".into()], elements).expect("chains are closed")
    }

    /// `{0,1}^k`.
    pub fn boolean(k: usize) -> Self {
        let carrier = (0..k).map(|i| format!("p{i}")).collect();
        let elements = (0..1usize << k)
            .map(|bits| {
                FnElement(
                    (0..k)
                        .map(|i| {
                            if bits >> (k - 1 - i) & 1 == 1 {
                                Rat01::ONE
                            } else {
                                Rat01::ZERO
                            }
                        })
                        .collect(),
                )
            })
            .collect();
        Self::from_elements(carrier, elements).expect("boolean algebras are closed")
    }

    /// Dyadic rationals in `[0,1]` on `points` points (intensional).
    pub fn dyadic(points: usize) -> Self {
        let carrier = (0..points).map(|i| format!("p{i}")).collect();
        Self::intensional(
            carrier,
            Membership::pointwise(points, ValueSet::DYADIC),
            Vec::new(),
        )
        .expect("dyadics contain the constants")
    }

    /// All rationals in `[0,1]` on `points` points (intensional).
    pub fn rational(points: usize) -> Self {
        let carrier = (0..points).map(|i| format!("p{i}")).collect();
        Self::intensional(
            carrier,
            Membership::pointwise(points, ValueSet::Rational),
            Vec::new(),
        )
        .expect("rationals contain the constants")
    }

    /// Direct product of extensional factors on the disjoint union of carriers.
    pub fn product(factors: &[FnAlgebra]) -> Result<Self> {
        let mut carrier = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            carrier.extend(f.carrier.iter().map(|p| format!("{i}.{p}")));
        }
        let tables = factors
            .iter()
            .map(|f| f.table().cloned())
            .collect::<Result<Vec<_>>>()?;
        let table = TableAlgebra::product(&tables);
        let sizes: Vec<usize> = tables.iter().map(|t| t.size()).collect();
        let mut elements = Vec::with_capacity(table.size());
        for mut idx in 0..table.size() {
            let mut digits = vec![0; sizes.len()];
            for (slot, &s) in digits.iter_mut().zip(&sizes).rev() {
                *slot = idx % s;
                idx /= s;
            }
            let mut values = Vec::with_capacity(carrier.len());
            for (f, &d) in factors.iter().zip(&digits) {
                values.extend_from_slice(&f.elements()?[d].0);
            }
            elements.push(FnElement(values));
        }
        let n = table.size();
        let oplus = (0..n * n).map(|i| table.oplus(i / n, i % n)).collect();
        let neg = (0..n).map(|i| table.neg(i)).collect();
        Self::from_parts(carrier, elements, oplus, neg)
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn points(&self) -> usize {
        self.carrier.len()
    }

    pub fn kind(&self) -> &FnKind {
        &self.kind
    }

    pub fn is_extensional(&self) -> bool {
        matches!(self.kind, FnKind::Extensional(_))
    }

    fn ext(&self) -> Result<&Extensional> {
        match &self.kind {
            FnKind::Extensional(e) => Ok(e),
            FnKind::Intensional(_) => Err(Error::IntensionalNotMaterializable),
        }
    }

    pub fn elements(&self) -> Result<&[FnElement]> {
        Ok(&self.ext()?.elements)
    }

    pub fn element(&self, i: usize) -> &FnElement {
        &self.ext().expect("extensional algebra").elements[i]
    }

    pub fn size(&self) -> Result<usize> {
        Ok(self.ext()?.elements.len())
    }

    pub fn table(&self) -> Result<&TableAlgebra> {
        Ok(&self.ext()?.table)
    }

    pub fn derivations(&self) -> Option<&[Derivation]> {
        self.ext().ok()?.derivations.as_deref()
    }

    /// Element indices in the order they were discovered; every derivation
    /// only refers to elements earlier in this order.
    pub fn build_order(&self) -> Option<&[usize]> {
        self.ext().ok().map(|e| e.build_order.as_slice())
    }

    pub fn generators(&self) -> &[FnElement] {
        match &self.kind {
            FnKind::Extensional(e) => &e.generators,
            FnKind::Intensional(i) => &i.generators,
        }
    }

    pub fn index_of(&self, e: &FnElement) -> Option<usize> {
        self.ext().ok()?.index.get(e).copied()
    }

    pub fn contains(&self, e: &FnElement) -> bool {
        if e.len() != self.points() {
            return false;
        }
        match &self.kind {
            FnKind::Extensional(x) => x.index.contains_key(e),
            FnKind::Intensional(i) => i.membership.accepts(e),
        }
    }

    pub fn membership(&self) -> Option<&Membership> {
        match &self.kind {
            FnKind::Intensional(i) => Some(&i.membership),
            FnKind::Extensional(_) => None,
        }
    }

    pub fn zero_element(&self) -> FnElement {
        FnElement::zero(self.points())
    }

    pub fn one_element(&self) -> FnElement {
        FnElement::one(self.points())
    }

    /// Points `p, q` are inseparable when every element agrees on them.
    /// Only defined for extensional algebras.
    pub fn inseparability_classes(&self) -> Result<Vec<Vec<usize>>> {
        let elems = self.elements()?;
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for p in 0..self.points() {
            match classes
                .iter_mut()
                .find(|c| elems.iter().all(|e| e.0[c[0]] == e.0[p]))
            {
                Some(c) => c.push(p),
                None => classes.push(vec![p]),
            }
        }
        Ok(classes)
    }

    pub fn is_separating(&self) -> Result<bool> {
        Ok(self.inseparability_classes()?.iter().all(|c| c.len() == 1))
    }
}

/// Least subset of `[0,1]^carrier` containing `gens`, 0 and 1 and closed
/// under pointwise ⊕ and ¬. Every element records how it was first derived.
pub fn generate_subalgebra(
    carrier: Vec<String>,
    gens: Vec<FnElement>,
    budget: usize,
) -> Result<FnAlgebra> {
    let len = carrier.len();
    if let Some(g) = gens.iter().find(|g| g.len() != len) {
        return Err(Error::InvalidTable(format!(
            "generator has {} values, carrier has {len} points",
            g.len()
        )));
    }
    let mut elements: Vec<FnElement> = Vec::new();
    let mut index: BTreeMap<FnElement, usize> = BTreeMap::new();
    let mut derivations: Vec<Derivation> = Vec::new();
    let mut add = |e: FnElement,
                   d: Derivation,
                   elements: &mut Vec<FnElement>,
                   derivations: &mut Vec<Derivation>|
     -> Result<usize> {
        if let Some(&i) = index.get(&e) {
            return Ok(i);
        }
        if elements.len() >= budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let i = elements.len();
        index.insert(e.clone(), i);
        elements.push(e);
        derivations.push(d);
        Ok(i)
    };
    add(
        FnElement::zero(len),
        Derivation::Zero,
        &mut elements,
        &mut derivations,
    )?;
    for (k, g) in gens.iter().enumerate() {
        add(
            g.clone(),
            Derivation::Generator(k),
            &mut elements,
            &mut derivations,
        )?;
    }
    // Row x holds x ⊕ y for y <= x (discovery indices).
    let mut tri: Vec<Vec<usize>> = Vec::new();
    let mut neg: Vec<usize> = Vec::new();
    let mut x = 0;
    while x < elements.len() {
        let nx = elements[x].neg();
        neg.push(add(
            nx,
            Derivation::Neg(x),
            &mut elements,
            &mut derivations,
        )?);
        let mut row = Vec::with_capacity(x + 1);
        for y in 0..=x {
            let z = elements[x].oplus(&elements[y]);
            row.push(add(
                z,
                Derivation::Oplus(x, y),
                &mut elements,
                &mut derivations,
            )?);
        }
        tri.push(row);
        x += 1;
    }
    let n = elements.len();
    let mut oplus = vec![0; n * n];
    for (x, row) in tri.iter().enumerate() {
        for (y, &z) in row.iter().enumerate() {
            oplus[x * n + y] = z;
            oplus[y * n + x] = z;
        }
    }
    let ext = Extensional::assemble(Raw {
        elements,
        oplus,
        neg,
        derivations: Some(derivations),
        generators: gens,
    })?;
    Ok(FnAlgebra {
        carrier,
        kind: FnKind::Extensional(ext),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mv::table::is_mv;
    use alloc::collections::BTreeSet;
    use alloc::string::ToString;

    fn r(n: i128, d: i128) -> Rat01 {
        Rat01::new(n, d).unwrap()
    }

    fn el(vals: &[(i128, i128)]) -> FnElement {
        FnElement(vals.iter().map(|&(n, d)| r(n, d)).collect())
    }

    /// Naive fixpoint: repeat all pairs until nothing new appears.
    fn brute_closure(gens: &[FnElement], len: usize) -> BTreeSet<FnElement> {
        let mut set: BTreeSet<FnElement> = gens.iter().cloned().collect();
        set.insert(FnElement::zero(len));
        set.insert(FnElement::one(len));
        loop {
            let cur: Vec<FnElement> = set.iter().cloned().collect();
            let before = set.len();
            for a in &cur {
                set.insert(a.neg());
                for b in &cur {
                    set.insert(a.oplus(b));
                }
            }
            if set.len() == before {
                return set;
            }
        }
    }

    #[test]
    fn sixth_generates_seven_chain() {
        let g = vec![el(&[(1, 6)])];
        let a = generate_subalgebra(vec!["p".into()], g.clone(), 100).unwrap();
        let oracle = brute_closure(&g, 1);
        assert_eq!(oracle.len(), 7);
        let got: BTreeSet<FnElement> = a.elements().unwrap().iter().cloned().collect();
        assert_eq!(got, oracle);
        assert!(is_mv(a.table().unwrap()));
    }

    #[test]
    fn empty_generators_give_constants() {
        let a = generate_subalgebra(vec!["p".into(), "q".into()], Vec::new(), 10).unwrap();
        assert_eq!(a.size().unwrap(), 2);
    }

    #[test]
    fn boolean_square_from_one_indicator() {
        let g = vec![el(&[(1, 1), (0, 1)])];
        let a = generate_subalgebra(vec!["p".into(), "q".into()], g.clone(), 100).unwrap();
        let oracle = brute_closure(&g, 2);
        assert_eq!(oracle.len(), 4);
        let got: BTreeSet<FnElement> = a.elements().unwrap().iter().cloned().collect();
        assert_eq!(got, oracle);
    }

    #[test]
    fn budget_is_enforced() {
        let g = vec![el(&[(1, 97)])];
        assert_eq!(
            generate_subalgebra(vec!["p".into()], g, 20).unwrap_err(),
            Error::BudgetExceeded(20)
        );
    }

    #[test]
    fn adic_normal_form() {
        assert_eq!(ValueSet::adic(2, 2), ValueSet::DYADIC);
        assert_eq!(ValueSet::adic(4, 24), ValueSet::Adic { base: 2, scale: 3 });
        assert_eq!(ValueSet::adic(12, 9), ValueSet::Adic { base: 6, scale: 1 });
    }

    #[test]
    fn canonical_order_and_derivations() {
        let g = vec![el(&[(1, 2), (1, 3)])];
        let a = generate_subalgebra(vec!["p".into(), "q".into()], g, 1000).unwrap();
        let elems = a.elements().unwrap();
        for w in elems.windows(2) {
            assert_eq!(canonical_cmp(&w[0], &w[1]), Ordering::Less);
        }
        // Replaying the derivations reproduces every element.
        let ds = a.derivations().unwrap();
        let mut vals: Vec<Option<FnElement>> = vec![None; elems.len()];
        for &i in a.build_order().unwrap() {
            let v = match ds[i] {
                Derivation::Zero => FnElement::zero(2),
                Derivation::Generator(k) => a.generators()[k].clone(),
                Derivation::Neg(x) => vals[x].clone().unwrap().neg(),
                Derivation::Oplus(x, y) => {
                    vals[x].clone().unwrap().oplus(vals[y].as_ref().unwrap())
                }
            };
            assert_eq!(&v, &elems[i]);
            vals[i] = Some(v);
        }
    }

    #[test]
    fn regeneration_is_idempotent() {
        let g = vec![el(&[(1, 2), (1, 4)])];
        let a = generate_subalgebra(vec!["p".into(), "q".into()], g, 1000).unwrap();
        let again = generate_subalgebra(a.carrier().to_vec(), a.elements().unwrap().to_vec(), 1000)
            .unwrap();
        assert_eq!(a.elements().unwrap(), again.elements().unwrap());
    }

    #[test]
    fn from_elements_checks_closure() {
        let carrier = vec!["p".to_string()];
        let half = el(&[(1, 2)]);
        let ok = FnAlgebra::from_elements(
            carrier.clone(),
            vec![el(&[(0, 1)]), half.clone(), el(&[(1, 1)])],
        );
        assert!(ok.is_ok());
        let bad =
            FnAlgebra::from_elements(carrier, vec![el(&[(0, 1)]), el(&[(1, 3)]), el(&[(1, 1)])]);
        assert!(matches!(bad, Err(Error::NotClosed(_))));
    }

    #[test]
    fn value_sets() {
        assert!(ValueSet::DYADIC.contains(r(3, 8)));
        assert!(!ValueSet::DYADIC.contains(r(1, 3)));
        let thirds = ValueSet::Adic { base: 2, scale: 3 };
        assert!(thirds.contains(r(1, 12)));
        assert!(thirds.contains(r(1, 2)));
        assert!(!thirds.contains(r(1, 5)));
        assert!(ValueSet::Finite { den: 6 }.contains(r(1, 3)));
        assert!(!ValueSet::Finite { den: 6 }.contains(r(1, 4)));
    }

    #[test]
    fn intensional_membership_with_classes() {
        let m = Membership {
            classes: vec![vec![0, 1]],
            values: vec![ValueSet::Rational],
        };
        let a = FnAlgebra::intensional(vec!["p".into(), "q".into()], m, Vec::new()).unwrap();
        assert!(a.contains(&el(&[(1, 3), (1, 3)])));
        assert!(!a.contains(&el(&[(1, 3), (1, 2)])));
        assert_eq!(a.table().unwrap_err(), Error::IntensionalNotMaterializable);
    }

    #[test]
    fn product_of_chains() {
        let p = FnAlgebra::product(&[FnAlgebra::chain(2), FnAlgebra::chain(3)]).unwrap();
        assert_eq!(p.size().unwrap(), 12);
        assert_eq!(p.points(), 2);
        assert!(is_mv(p.table().unwrap()));
        assert!(p.is_separating().unwrap());
    }
}
