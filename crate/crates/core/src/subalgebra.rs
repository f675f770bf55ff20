//! Graded subspaces and the subalgebra machinery built on them. Also home to
//! the four maximal subalgebras of `K10`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Element, SuperAlgebra};
use crate::catalog::{
    k10_v_gram, king_decomposition, make_bilinear_jordan_labeled, make_field, make_k10_table,
};
use crate::error::{Error, Result};
use crate::linear::{format_scalar, frac, int, parse_scalar, rational_sqrt, Matrix, Scalar, Subspace};
use crate::morphism::{
    table_tensor_iso, factor_orthogonal, phi, swap_automorphism, Morphism, OrthogonalMap,
    V_RANGE,
};

/// A subspace `S = S_0 ⊕ S_1` compatible with the grading, stored as two
/// echelon bases in the even and odd coordinate blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedSubspace {
    even: Subspace,
    odd: Subspace,
}

impl GradedSubspace {
    pub fn new(even: Subspace, odd: Subspace) -> Self {
        GradedSubspace { even, odd }
    }

    /// Smallest graded subspace containing the given elements, that is the span
    /// of their homogeneous components.
    pub fn spanned(a: &SuperAlgebra, elements: &[Element]) -> Result<Self> {
        let de = a.dim_even();
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for x in elements {
            if x.dim() != a.dim() {
                return Err(Error::MismatchedAlgebras(x.dim(), a.dim()));
            }
            even.push(x.coords()[..de].to_vec());
            odd.push(x.coords()[de..].to_vec());
        }
        Ok(GradedSubspace {
            even: Subspace::span(de, &even)?,
            odd: Subspace::span(a.dim_odd(), &odd)?,
        })
    }

    pub fn zero(a: &SuperAlgebra) -> Self {
        GradedSubspace { even: Subspace::zero(a.dim_even()), odd: Subspace::zero(a.dim_odd()) }
    }

    pub fn whole(a: &SuperAlgebra) -> Self {
        GradedSubspace { even: Subspace::full(a.dim_even()), odd: Subspace::full(a.dim_odd()) }
    }

    pub fn even_part(a: &SuperAlgebra) -> Self {
        GradedSubspace { even: Subspace::full(a.dim_even()), odd: Subspace::zero(a.dim_odd()) }
    }

    pub fn odd_part(a: &SuperAlgebra) -> Self {
        GradedSubspace { even: Subspace::zero(a.dim_even()), odd: Subspace::full(a.dim_odd()) }
    }

    pub fn even(&self) -> &Subspace {
        &self.even
    }

    pub fn odd(&self) -> &Subspace {
        &self.odd
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.even.dim(), self.odd.dim())
    }

    pub fn dim(&self) -> usize {
        self.even.dim() + self.odd.dim()
    }

    fn check(&self, a: &SuperAlgebra) {
        assert_eq!(self.even.ambient(), a.dim_even(), "subspace belongs to another algebra");
        assert_eq!(self.odd.ambient(), a.dim_odd(), "subspace belongs to another algebra");
    }

    /// Echelon basis as elements of `a`, even vectors first.
    pub fn elements(&self, a: &SuperAlgebra) -> Vec<Element> {
        self.check(a);
        let (de, dd) = (a.dim_even(), a.dim_odd());
        let mut out = Vec::with_capacity(self.dim());
        for v in self.even.vectors() {
            let mut c = v;
            c.extend(std::iter::repeat_n(Scalar::zero(), dd));
            out.push(Element::from_coords(c));
        }
        for v in self.odd.vectors() {
            let mut c = vec![Scalar::zero(); de];
            c.extend(v);
            out.push(Element::from_coords(c));
        }
        out
    }

    pub fn contains(&self, a: &SuperAlgebra, x: &Element) -> Result<bool> {
        if x.dim() != a.dim() {
            return Err(Error::MismatchedAlgebras(x.dim(), a.dim()));
        }
        let de = a.dim_even();
        Ok(self.even.contains(&x.coords()[..de])? && self.odd.contains(&x.coords()[de..])?)
    }

    pub fn contains_subspace(&self, other: &GradedSubspace) -> Result<bool> {
        Ok(self.even.contains_subspace(&other.even)? && self.odd.contains_subspace(&other.odd)?)
    }

    pub fn sum(&self, other: &GradedSubspace) -> Result<GradedSubspace> {
        Ok(GradedSubspace { even: self.even.sum(&other.even)?, odd: self.odd.sum(&other.odd)? })
    }

    pub fn intersect(&self, other: &GradedSubspace) -> Result<GradedSubspace> {
        Ok(GradedSubspace {
            even: self.even.intersect(&other.even)?,
            odd: self.odd.intersect(&other.odd)?,
        })
    }

    /// Image under a graded map.
    pub fn image(&self, m: &Morphism) -> Result<GradedSubspace> {
        let images: Vec<Element> = self.elements(m.source()).iter().map(|x| m.apply(x)).collect();
        GradedSubspace::spanned(m.target(), &images)
    }

    pub fn to_file(&self, a: &SuperAlgebra) -> SubspaceFile {
        let row = |x: &Element| x.coords().iter().map(format_scalar).collect();
        let elems = self.elements(a);
        SubspaceFile {
            algebra: a.name().to_string(),
            labels: a.labels().to_vec(),
            dims: self.dims(),
            basis: elems.iter().map(row).collect(),
            elements: elems.iter().map(|x| a.format_element(x)).collect(),
        }
    }

    /// Reads the coefficient rows of a subspace file; the labels must match `a`.
    pub fn from_file(a: &SuperAlgebra, file: &SubspaceFile) -> Result<Self> {
        if file.labels != a.labels() {
            return Err(Error::InvalidArgument(format!(
                "subspace file labels {:?} do not match algebra {}",
                file.labels,
                a.name()
            )));
        }
        let rows = file
            .basis
            .iter()
            .map(|r| {
                let c = r.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>>>()?;
                if c.len() != a.dim() {
                    return Err(Error::Dimension(format!(
                        "basis row of length {} for algebra of dimension {}",
                        c.len(),
                        a.dim()
                    )));
                }
                Ok(Element::from_coords(c))
            })
            .collect::<Result<Vec<_>>>()?;
        let s = GradedSubspace::spanned(a, &rows)?;
        if s.dims() != file.dims {
            return Err(Error::InvalidArgument(format!(
                "subspace file declares dims {:?} but spans {:?}",
                file.dims,
                s.dims()
            )));
        }
        Ok(s)
    }

    pub fn describe(&self, a: &SuperAlgebra) -> String {
        let parts: Vec<String> = self.elements(a).iter().map(|x| a.format_element(x)).collect();
        format!("span{{{}}}", parts.join(", "))
    }
}

/// On-disk subspace: echelon basis rows over the algebra's basis labels.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SubspaceFile {
    pub algebra: String,
    pub labels: Vec<String>,
    pub dims: (usize, usize),
    pub basis: Vec<Vec<String>>,
    pub elements: Vec<String>,
}

fn products_span(a: &SuperAlgebra, left: &[Element], right: &[Element]) -> Result<GradedSubspace> {
    let prods: Vec<Element> =
        left.iter().flat_map(|x| right.iter().map(move |y| a.mul(x, y))).collect();
    GradedSubspace::spanned(a, &prods)
}

/// Least subalgebra containing the generators, by fixed-point iteration.
pub fn span_closure(a: &SuperAlgebra, generators: &[Element]) -> Result<GradedSubspace> {
    let mut current = GradedSubspace::spanned(a, generators)?;
    loop {
        let basis = current.elements(a);
        let next = current.sum(&products_span(a, &basis, &basis)?)?;
        if next.dim() == current.dim() {
            return Ok(current);
        }
        current = next;
    }
}

pub fn is_subalgebra(a: &SuperAlgebra, s: &GradedSubspace) -> bool {
    let basis = s.elements(a);
    basis.iter().all(|x| basis.iter().all(|y| s.contains(a, &a.mul(x, y)).expect("same algebra")))
}

/// Whether `s` is a two-sided ideal of the subalgebra `within`.
pub fn is_ideal(a: &SuperAlgebra, s: &GradedSubspace, within: &GradedSubspace) -> Result<bool> {
    if !within.contains_subspace(s)? {
        return Err(Error::Precondition("ideal candidate is not contained in the subalgebra".into()));
    }
    let sb = s.elements(a);
    let wb = within.elements(a);
    for x in &sb {
        for y in &wb {
            if !s.contains(a, &a.mul(x, y))? || !s.contains(a, &a.mul(y, x))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Derived chain `S, S·S, (S·S)(S·S), ...` reaches zero.
pub fn is_solvable(a: &SuperAlgebra, s: &GradedSubspace) -> bool {
    let mut current = s.clone();
    for _ in 0..=s.dim() {
        if current.dim() == 0 {
            return true;
        }
        let b = current.elements(a);
        current = products_span(a, &b, &b).expect("same algebra");
    }
    current.dim() == 0
}

fn element_label(a: &SuperAlgebra, x: &Element) -> String {
    let mut support = x.support();
    if let (Some((k, c)), None) = (support.next(), support.next()) {
        if c.is_one() {
            return a.labels()[k].clone();
        }
    }
    format!("({})", a.format_element(x).replace(' ', ""))
}

/// A subalgebra as an algebra in its own right, on its echelon basis.
pub fn subalgebra_algebra(a: &SuperAlgebra, s: &GradedSubspace) -> Result<SuperAlgebra> {
    if !is_subalgebra(a, s) {
        return Err(Error::Precondition("subspace is not a subalgebra".into()));
    }
    let basis = s.elements(a);
    let names: Vec<String> = basis.iter().map(|x| element_label(a, x)).collect();
    let (de, dd) = s.dims();
    let coords = |x: &Element| -> Vec<Scalar> {
        let ad = a.dim_even();
        let mut c = s.even.coordinates(&x.coords()[..ad]).expect("closed under products");
        c.extend(s.odd.coordinates(&x.coords()[ad..]).expect("closed under products"));
        c
    };
    SuperAlgebra::from_fn(format!("sub({})", a.name()), de, dd, names, |i, j| {
        coords(&a.mul(&basis[i], &basis[j]))
    })
}

/// `B/R` on the canonical complement of `R` inside `B`, with the projection.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    pub quotient: Arc<SuperAlgebra>,
    pub projection: Morphism,
}

pub fn quotient(a: &SuperAlgebra, b: &GradedSubspace, r: &GradedSubspace) -> Result<QuotientPresentation> {
    if !is_ideal(a, r, b)? {
        return Err(Error::Precondition("quotient by a subspace that is not an ideal".into()));
    }
    let bal = Arc::new(subalgebra_algebra(a, b)?);
    // Coordinates of R inside B, block by block.
    let r_even = Subspace::span(
        b.even.dim(),
        &r.even.vectors().iter().map(|v| b.even.coordinates(v).expect("R ⊆ B")).collect::<Vec<_>>(),
    )?;
    let r_odd = Subspace::span(
        b.odd.dim(),
        &r.odd.vectors().iter().map(|v| b.odd.coordinates(v).expect("R ⊆ B")).collect::<Vec<_>>(),
    )?;
    let keep_even = r_even.complement_indices();
    let keep_odd = r_odd.complement_indices();
    let reduce = |sub: &Subspace, keep: &[usize], v: &[Scalar]| -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, p) in sub.basis().to_rows().iter().zip(sub.pivots()) {
            let c = v[p].clone();
            if !c.is_zero() {
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &c * y;
                }
            }
        }
        keep.iter().map(|&k| v[k].clone()).collect()
    };
    let de_b = b.even.dim();
    let project = |x: &[Scalar]| -> Vec<Scalar> {
        let mut out = reduce(&r_even, &keep_even, &x[..de_b]);
        out.extend(reduce(&r_odd, &keep_odd, &x[de_b..]));
        out
    };
    let names: Vec<String> = keep_even
        .iter()
        .map(|&k| bal.labels()[k].clone())
        .chain(keep_odd.iter().map(|&k| bal.labels()[de_b + k].clone()))
        .map(|l| format!("[{l}]"))
        .collect();
    let reps: Vec<usize> =
        keep_even.iter().copied().chain(keep_odd.iter().map(|&k| de_b + k)).collect();
    let quotient = SuperAlgebra::from_fn(
        format!("{}/R", bal.name()),
        keep_even.len(),
        keep_odd.len(),
        names,
        |i, j| {
            let prod = Element::from_sparse(bal.dim(), bal.basis_product(reps[i], reps[j]));
            project(prod.coords())
        },
    )?;
    let quotient = Arc::new(quotient);
    let images: Vec<Element> = (0..bal.dim())
        .map(|i| Element::from_coords(project(bal.basis(i).coords())))
        .collect();
    let projection = Morphism::from_images(bal, quotient.clone(), &images)?;
    if !projection.is_homomorphism().passed() {
        return Err(Error::Verification("quotient projection is not multiplicative".into()));
    }
    Ok(QuotientPresentation { quotient, projection })
}

/// The four conjugacy classes of maximal subalgebras of `K10`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MaximalKind {
    I,
    II,
    III,
    IV,
}

impl MaximalKind {
    pub const ALL: [MaximalKind; 4] = [MaximalKind::I, MaximalKind::II, MaximalKind::III, MaximalKind::IV];

    pub fn basis_labels(self) -> &'static [&'static str] {
        match self {
            MaximalKind::I => &["e", "a", "b", "c1", "c2", "f"],
            MaximalKind::II => &["e", "f", "a", "p1", "p2"],
            MaximalKind::III => &["e", "f", "a+b", "c1", "p1", "q1", "p2+q2"],
            MaximalKind::IV => &["e", "f", "a", "b", "c1", "p1", "q1"],
        }
    }

    pub fn expected_dims(self) -> (usize, usize) {
        match self {
            MaximalKind::I => (6, 0),
            MaximalKind::II => (3, 2),
            MaximalKind::III => (4, 3),
            MaximalKind::IV => (5, 2),
        }
    }
}

impl fmt::Display for MaximalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MaximalKind::I => "i",
            MaximalKind::II => "ii",
            MaximalKind::III => "iii",
            MaximalKind::IV => "iv",
        })
    }
}

impl FromStr for MaximalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(MaximalKind::I),
            "ii" | "2" => Ok(MaximalKind::II),
            "iii" | "3" => Ok(MaximalKind::III),
            "iv" | "4" => Ok(MaximalKind::IV),
            _ => Err(Error::InvalidArgument(format!("unknown subalgebra kind {s:?}"))),
        }
    }
}

fn span_of(a: &SuperAlgebra, names: &[&str]) -> Result<GradedSubspace> {
    let elems = names.iter().map(|n| a.parse_element(n)).collect::<Result<Vec<_>>>()?;
    GradedSubspace::spanned(a, &elems)
}

/// One of the maximal subalgebras of the `K10` table, checked to be a proper
/// subalgebra containing the unit `e + f`.
pub fn maximal_subalgebra(kind: MaximalKind) -> Result<GradedSubspace> {
    let k10 = make_k10_table();
    let s = span_of(&k10, kind.basis_labels())?;
    if !is_subalgebra(&k10, &s) {
        return Err(Error::Verification(format!("subalgebra ({kind}) is not product-closed")));
    }
    if s.dim() == k10.dim() {
        return Err(Error::Verification(format!("subalgebra ({kind}) is not proper")));
    }
    if !s.contains(&k10, &k10.parse_element("e + f")?)? {
        return Err(Error::Verification(format!("subalgebra ({kind}) misses the unit")));
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeVerdict {
    /// Every tested adjunction generated the whole algebra.
    ProbablyMaximal { candidates: usize },
    /// `witness` generates, together with `b`, the proper subalgebra
    /// `closure`; `extension` is a proper subalgebra containing `closure`
    /// obtained by adjoining further complement vectors while staying proper.
    NotMaximal { witness: Element, closure: GradedSubspace, extension: GradedSubspace },
}

impl ProbeVerdict {
    pub fn is_probably_maximal(&self) -> bool {
        matches!(self, ProbeVerdict::ProbablyMaximal { .. })
    }
}

fn random_element<R: Rng>(rng: &mut R, dim: usize) -> Element {
    Element::from_coords((0..dim).map(|_| int(rng.gen_range(-3..=3))).collect())
}

fn closure_with(a: &SuperAlgebra, b: &GradedSubspace, x: &Element) -> GradedSubspace {
    let mut gens = b.elements(a);
    gens.push(x.clone());
    span_closure(a, &gens).expect("same algebra")
}

/// Adjoins each complement basis vector, then `trials` seeded random elements
/// outside `b`, and checks that the generated subalgebra is everything.
pub fn maximality_probe(
    a: &SuperAlgebra,
    b: &GradedSubspace,
    trials: usize,
    seed: u64,
) -> Result<ProbeVerdict> {
    if !is_subalgebra(a, b) {
        return Err(Error::Precondition("probe expects a subalgebra".into()));
    }
    if b.dim() == a.dim() {
        return Err(Error::Precondition("probe expects a proper subalgebra".into()));
    }
    let de = a.dim_even();
    let mut candidates: Vec<Element> = b
        .even
        .complement_indices()
        .into_iter()
        .chain(b.odd.complement_indices().into_iter().map(|k| de + k))
        .map(|k| a.basis(k))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drawn = 0;
    while drawn < trials {
        let x = random_element(&mut rng, a.dim());
        if !b.contains(a, &x)? {
            candidates.push(x);
            drawn += 1;
        }
    }
    let whole = a.dim();
    let first_failure = candidates
        .par_iter()
        .position_first(|x| closure_with(a, b, x).dim() != whole);
    let Some(pos) = first_failure else {
        return Ok(ProbeVerdict::ProbablyMaximal { candidates: candidates.len() });
    };
    let witness = candidates[pos].clone();
    let closure = closure_with(a, b, &witness);
    let mut extension = closure.clone();
    for k in 0..whole {
        let x = a.basis(k);
        if extension.contains(a, &x)? {
            continue;
        }
        let grown = closure_with(a, &extension, &x);
        if grown.dim() != whole {
            extension = grown;
        }
    }
    Ok(ProbeVerdict::NotMaximal { witness, closure, extension })
}

/// The unordered pair `{t, 1/t}` attached to an algebra of type `D_t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DtInvariant {
    /// Stored with the smaller member first.
    Pair(Scalar, Scalar),
    Degenerate,
}

impl DtInvariant {
    pub fn from_t(t: Scalar) -> Self {
        if t.is_zero() {
            return DtInvariant::Degenerate;
        }
        let s = t.recip();
        if t <= s {
            DtInvariant::Pair(t, s)
        } else {
            DtInvariant::Pair(s, t)
        }
    }

    pub fn contains(&self, t: &Scalar) -> bool {
        match self {
            DtInvariant::Pair(x, y) => x == t || y == t,
            DtInvariant::Degenerate => false,
        }
    }
}

impl fmt::Display for DtInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DtInvariant::Pair(x, y) => write!(f, "{{{}, {}}}", format_scalar(x), format_scalar(y)),
            DtInvariant::Degenerate => f.write_str("degenerate"),
        }
    }
}

/// Reads off `t` for an algebra with a 2-dimensional even part spanned by two
/// orthogonal idempotents, each acting as `½` on a 2-dimensional odd part.
pub fn dt_parameter(a: &SuperAlgebra) -> Result<DtInvariant> {
    if a.dim_even() != 2 || a.dim_odd() != 2 {
        return Err(Error::Precondition(format!(
            "expected even and odd parts of dimension 2, got ({}, {})",
            a.dim_even(),
            a.dim_odd()
        )));
    }
    let (e_idem, f_idem) = split_idempotents(a)?;
    let half = frac(1, 2);
    for idem in [&e_idem, &f_idem] {
        for k in 2..4 {
            let u = a.basis(k);
            if a.mul(idem, &u) != u.scale(&half) || a.mul(&u, idem) != u.scale(&half) {
                return Err(Error::Precondition(format!(
                    "idempotent {} does not act as 1/2 on {}",
                    a.format_element(idem),
                    a.labels()[k]
                )));
            }
        }
    }
    let uv = a.mul(&a.basis(2), &a.basis(3));
    // uv = α E + β F with E, F a basis of the even part.
    let m = Matrix::from_columns(2, &[e_idem.coords()[..2].to_vec(), f_idem.coords()[..2].to_vec()])?;
    let coef = m.solve(&uv.coords()[..2])?.expect("E, F span the even part");
    let (alpha, beta) = (&coef[0], &coef[1]);
    if alpha.is_zero() || beta.is_zero() {
        return Ok(DtInvariant::Degenerate);
    }
    Ok(DtInvariant::from_t(beta / alpha))
}

/// `dt_parameter` of a subalgebra given as a subspace.
pub fn dt_parameter_of(a: &SuperAlgebra, s: &GradedSubspace) -> Result<DtInvariant> {
    dt_parameter(&subalgebra_algebra(a, s)?)
}

/// The two primitive idempotents of a 2-dimensional even part `F ⊕ F`.
fn split_idempotents(a: &SuperAlgebra) -> Result<(Element, Element)> {
    let b0 = a.basis(0);
    let b1 = a.basis(1);
    // Unit of the even part: solve 1·b_i = b_i.
    let l0 = Matrix::from_columns(2, &[a.mul(&b0, &b0).coords()[..2].to_vec(), a.mul(&b1, &b0).coords()[..2].to_vec()])?;
    let l1 = Matrix::from_columns(2, &[a.mul(&b0, &b1).coords()[..2].to_vec(), a.mul(&b1, &b1).coords()[..2].to_vec()])?;
    let stacked = Matrix::from_rows(2, [l0.to_rows(), l1.to_rows()].concat())?;
    let rhs = vec![int(1), int(0), int(0), int(1)];
    let unit = stacked
        .solve(&rhs)?
        .ok_or_else(|| Error::Precondition("even part has no unit".into()))?;
    let one = Element::from_coords(vec![unit[0].clone(), unit[1].clone(), int(0), int(0)]);
    // z not proportional to 1, with z² = α z + β 1.
    let z = if unit[1].is_zero() { b1 } else { b0 };
    let z2 = a.mul(&z, &z);
    let m = Matrix::from_columns(2, &[z.coords()[..2].to_vec(), one.coords()[..2].to_vec()])?;
    let c = m.solve(&z2.coords()[..2])?.ok_or_else(|| Error::Precondition("even part not closed".into()))?;
    let (alpha, beta) = (&c[0], &c[1]);
    let disc = alpha * alpha + int(4) * beta;
    if disc.is_zero() {
        return Err(Error::Precondition("even part is not split: repeated eigenvalue".into()));
    }
    let root = rational_sqrt(&disc).ok_or_else(|| {
        Error::Precondition(format!("even part has no rational idempotents (discriminant {})", format_scalar(&disc)))
    })?;
    let two = int(2);
    let l1 = (alpha + &root) / &two;
    let l2 = (alpha - &root) / &two;
    let e = (&z - &one.scale(&l2)).scale(&(&l1 - &l2).recip());
    let f = &one - &e;
    for idem in [&e, &f] {
        if &a.mul(idem, idem) != idem {
            return Err(Error::Verification("computed idempotent is not idempotent".into()));
        }
    }
    if !a.mul(&e, &f).is_zero() {
        return Err(Error::Verification("computed idempotents are not orthogonal".into()));
    }
    Ok((e, f))
}

/// `ker(m - id)`, checked to be a subalgebra.
pub fn fixed_subalgebra(m: &Morphism) -> Result<GradedSubspace> {
    if m.source() != m.target() || !m.is_isomorphism() {
        return Err(Error::Precondition("fixed points need an automorphism".into()));
    }
    let a = m.source();
    let de = a.dim_even();
    let n = a.dim();
    let diff = m.matrix() - &Matrix::identity(n);
    let even = Subspace::span(de, &diff.submatrix(0..de, 0..de).nullspace())?;
    let odd = Subspace::span(n - de, &diff.submatrix(de..n, de..n).nullspace())?;
    let s = GradedSubspace { even, odd };
    if !is_subalgebra(a, &s) {
        return Err(Error::Verification("fixed points are not a subalgebra".into()));
    }
    Ok(s)
}

fn bilinear(q: &Matrix, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let qy = q.mul_vec(y).expect("square form");
    x.iter().zip(&qy).map(|(a, b)| a * b).sum()
}

fn reflection(q: &Matrix, r: &[Scalar]) -> Matrix {
    let n = r.len();
    let rr = bilinear(q, r, r);
    let qr = q.mul_vec(r).expect("square form");
    let mut m = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let v = m.get(i, j) - int(2) * &r[i] * &qr[j] / &rr;
            m.set(i, j, v);
        }
    }
    m
}

/// Isometry of `(V, q)` mapping `v1` to `v2`, a product of at most two
/// hyperplane reflections.
pub fn witt_map(v1: &[Scalar], v2: &[Scalar], q: &Matrix) -> Result<Matrix> {
    let n = q.rows();
    if v1.len() != n || v2.len() != n {
        return Err(Error::Dimension("vectors do not match the form".into()));
    }
    let (n1, n2) = (bilinear(q, v1, v1), bilinear(q, v2, v2));
    if n1 != n2 {
        return Err(Error::UnequalNorms(format_scalar(&n1), format_scalar(&n2)));
    }
    if n1.is_zero() {
        return Err(Error::Precondition("vectors must have nonzero norm".into()));
    }
    if v1 == v2 {
        return Ok(Matrix::identity(n));
    }
    let diff: Vec<Scalar> = v1.iter().zip(v2).map(|(a, b)| a - b).collect();
    let sum: Vec<Scalar> = v1.iter().zip(v2).map(|(a, b)| a + b).collect();
    let g = if !bilinear(q, &diff, &diff).is_zero() {
        reflection(q, &diff)
    } else if !bilinear(q, &sum, &sum).is_zero() {
        &reflection(q, v2) * &reflection(q, &sum)
    } else {
        return Err(Error::ReflectionDegenerate);
    };
    if g.mul_vec(v1)? != v2 || &(&g.transpose() * q) * &g != *q {
        return Err(Error::Verification("reflection product is not the required isometry".into()));
    }
    Ok(g)
}

/// Automorphism of the `K10` table relating a maximal subalgebra to its
/// description in the tensor model.
#[derive(Clone, Debug)]
pub struct ConjugationWitness {
    pub kind: MaximalKind,
    /// Automorphism of the `K10` table.
    pub automorphism: Morphism,
    /// The target description inside `F1 ⊕ (K3⊗K3)`.
    pub tensor_target: GradedSubspace,
    /// `tensor_target` pulled back to the table.
    pub table_target: GradedSubspace,
    /// Reflections composed onto the Witt map to make the lift rational.
    pub adjustments: usize,
}

/// Fixed subalgebra of the swap, pulled back to the table.
pub fn swap_fixed_subalgebra_table() -> Result<GradedSubspace> {
    let iso = table_tensor_iso()?;
    fixed_subalgebra(&swap_automorphism()?)?.image(&iso.inverse()?)
}

/// Explicit automorphism carrying `maximal_subalgebra(kind)` onto the tensor
/// description of its class.
pub fn conjugation_witness(kind: MaximalKind) -> Result<ConjugationWitness> {
    let iso = table_tensor_iso()?;
    let inv = iso.inverse()?;
    let table = iso.source().clone();
    let tensor = iso.target().clone();
    let source = maximal_subalgebra(kind)?;
    let (automorphism, tensor_target, adjustments) = match kind {
        MaximalKind::I => {
            return Err(Error::InvalidArgument("kind i is the even part; there is nothing to conjugate".into()))
        }
        MaximalKind::III => (
            Morphism::identity(table.clone()),
            span_of(&tensor, &["1", "e⊗e", "x⊗x", "x⊗y", "e⊗x", "x⊗e", "e⊗y"])?,
            0,
        ),
        MaximalKind::IV => (
            Morphism::identity(table.clone()),
            span_of(&tensor, &["1", "e⊗e", "x⊗e", "x⊗x", "x⊗y", "e⊗y", "y⊗y"])?,
            0,
        ),
        MaximalKind::II => {
            let target = fixed_subalgebra(&swap_automorphism()?)?;
            let (lift, adjustments) = witt_lift(&iso)?;
            let aut = inv.compose(&lift)?.compose(&iso)?;
            (aut, target, adjustments)
        }
    };
    if !automorphism.is_isomorphism() {
        return Err(Error::Verification("conjugation witness is not an automorphism".into()));
    }
    let table_target = tensor_target.image(&inv)?;
    let image = source.image(&automorphism)?;
    if image != table_target {
        return Err(Error::Verification(format!(
            "witness maps ({kind}) onto {} instead of {}",
            image.describe(&table),
            table_target.describe(&table)
        )));
    }
    Ok(ConjugationWitness { kind, automorphism, tensor_target, table_target, adjustments })
}

/// Lifts an isometry of `(V, Q)` sending `a` to `-(c1 + c2)` to an
/// automorphism of the tensor model. If the first choice needs an irrational
/// square root, it is composed with reflections fixing `a`.
fn witt_lift(iso: &Morphism) -> Result<(Morphism, usize)> {
    let q = k10_v_gram();
    let a = [int(1), int(0), int(0), int(0)];
    let target = [int(0), int(0), int(-1), int(-1)];
    let g = witt_map(&a, &target, &q)?;
    // Table V is coordinates 1..5; tensor V is coordinates V_RANGE.
    let t = iso.matrix().submatrix(V_RANGE, 1..5);
    let t_inv = t.invert()?;
    let small = small_vectors_orthogonal_to(&q, &a);
    let mut candidates = vec![(Matrix::identity(4), 0)];
    candidates.extend(small.iter().map(|r| (reflection(&q, r), 1)));
    for r in &small {
        for s in &small {
            candidates.push((&reflection(&q, r) * &reflection(&q, s), 2));
        }
    }
    let mut last = None;
    for (h, count) in candidates {
        let conj = &(&t * &(&g * &h)) * &t_inv;
        match factor_orthogonal(&OrthogonalMap::new(conj)?) {
            Ok(w) => return Ok((phi(&w), count)),
            Err(e @ Error::NonSquareScalar(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or(Error::Verification("no rational lift found".into())))
}

fn small_vectors_orthogonal_to(q: &Matrix, v: &[Scalar]) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    for x in -1i64..=1 {
        for y in -1i64..=1 {
            for z in -1i64..=1 {
                for w in -1i64..=1 {
                    let r = vec![int(x), int(y), int(z), int(w)];
                    if bilinear(q, &r, v).is_zero() && !bilinear(q, &r, &r).is_zero() {
                        out.push(r);
                    }
                }
            }
        }
    }
    out
}

/// One verified statement about a maximal subalgebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub claim: String,
    pub detail: String,
}

/// Structural data of a maximal subalgebra with the checks that produced it.
#[derive(Clone, Debug)]
pub struct StructureReport {
    pub kind: MaximalKind,
    pub subalgebra: GradedSubspace,
    pub radical: Option<GradedSubspace>,
    pub quotient: Option<Arc<SuperAlgebra>>,
    pub dt: Option<DtInvariant>,
    pub facts: Vec<Fact>,
}

fn require(ok: bool, claim: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Verification(claim.to_string()))
    }
}

pub fn structure_report(kind: MaximalKind) -> Result<StructureReport> {
    let k10 = make_k10_table();
    let b = maximal_subalgebra(kind)?;
    let mut facts = Vec::new();
    let mut fact = |claim: &str, detail: String| facts.push(Fact { claim: claim.into(), detail });
    let mut report = StructureReport { kind, subalgebra: b.clone(), radical: None, quotient: None, dt: None, facts: Vec::new() };
    match kind {
        MaximalKind::I => {
            let (i, j) = king_decomposition(&k10)?;
            fact("King decomposition", format!("{} ⊕ {}, ideals with zero cross products", i.describe(&k10), j.describe(&k10)));
        }
        MaximalKind::II => {
            let idem = k10.parse_element("1/2*e - 1/4*a")?;
            require(k10.mul(&idem, &idem) == idem, "(2e-a)/4 is idempotent")?;
            let line = GradedSubspace::spanned(&k10, std::slice::from_ref(&idem))?;
            require(is_ideal(&k10, &line, &b)?, "F(2e-a) is an ideal of B")?;
            fact("(2e-a)/4 spans a one-dimensional ideal", line.describe(&k10));
            let comp = span_of(&k10, &["f", "2e+a", "p1", "p2"])?;
            require(is_subalgebra(&k10, &comp), "complement is a subalgebra")?;
            require(line.sum(&comp)? == b, "F(2e-a) + complement = B")?;
            let zero = comp.elements(&k10).iter().all(|x| {
                k10.mul(&idem, x).is_zero() && k10.mul(x, &idem).is_zero()
            });
            require(zero, "(2e-a)/4 annihilates the complement")?;
            fact("complement annihilated by (2e-a)/4", comp.describe(&k10));
            let dt = dt_parameter_of(&k10, &comp)?;
            fact("dt parameter of the complement", dt.to_string());
            report.dt = Some(dt);
        }
        MaximalKind::III => {
            let r = span_of(&k10, &["c1", "a+b", "p1+q1"])?;
            require(is_ideal(&k10, &r, &b)?, "radical is an ideal")?;
            require(is_solvable(&k10, &r), "radical is solvable")?;
            fact("solvable ideal", format!("{} of dims {:?}", r.describe(&k10), r.dims()));
            let qp = quotient(&k10, &b, &r)?;
            let dt = dt_parameter(&qp.quotient)?;
            fact("dt parameter of B/R", dt.to_string());
            report.radical = Some(r);
            report.quotient = Some(qp.quotient);
            report.dt = Some(dt);
        }
        MaximalKind::IV => {
            let r = span_of(&k10, &["c1", "p1", "q1"])?;
            require(is_ideal(&k10, &r, &b)?, "radical is an ideal")?;
            require(is_solvable(&k10, &r), "radical is solvable")?;
            fact("solvable ideal", format!("{} of dims {:?}", r.describe(&k10), r.dims()));
            let qp = quotient(&k10, &b, &r)?;
            require(qp.quotient.dim_odd() == 0 && qp.quotient.dim() == 4, "B/R is even of dimension 4")?;
            let iso = quotient_iv_isomorphism(&qp.quotient)?;
            fact(
                "B/R ≅ F ⊕ J(form)",
                format!("{} -> {}", qp.quotient.labels().join(", "), iso.target().labels().join(", ")),
            );
            report.radical = Some(r);
            report.quotient = Some(qp.quotient);
        }
    }
    report.facts = facts;
    Ok(report)
}

/// `ē ↦ 1, ā ↦ v1, b̄ ↦ v2, f̄ ↦ 1'` into `J(diag(4, -4)) ⊕ F`.
fn quotient_iv_isomorphism(q: &Arc<SuperAlgebra>) -> Result<Morphism> {
    let form = Matrix::diagonal(&[int(4), int(-4)]);
    let jordan = make_bilinear_jordan_labeled(&form, "1", &["v1".to_string(), "v2".to_string()])?;
    let target = Arc::new(SuperAlgebra::direct_sum(&jordan, &make_field("1")));
    let names = ["[e]", "[a]", "[b]", "[f]"];
    let images = ["J(V,Q).1", "J(V,Q).v1", "J(V,Q).v2", "F.1"];
    let mut cols = vec![Element::zero(4); 4];
    for (n, img) in names.iter().zip(images) {
        let i = q
            .label_index(n)
            .ok_or_else(|| Error::Verification(format!("quotient has no basis vector {n}")))?;
        cols[i] = target.elem(img);
    }
    let m = Morphism::from_images(q.clone(), target, &cols)?;
    require(m.is_isomorphism(), "B/R ≅ F ⊕ J(form) via the explicit map")?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_dt;
    use crate::morphism::grading_automorphism;

    fn k10() -> SuperAlgebra {
        make_k10_table()
    }

    #[test]
    fn closure_examples() {
        let a = k10();
        let gens: Vec<Element> = ["e", "f", "p1", "q1"].iter().map(|l| a.elem(l)).collect();
        let s = span_closure(&a, &gens).unwrap();
        assert_eq!(s, span_of(&a, &["e", "f", "c1", "p1", "q1"]).unwrap());
        let odd: Vec<Element> = (6..10).map(|i| a.basis(i)).collect();
        assert_eq!(span_closure(&a, &odd).unwrap(), GradedSubspace::whole(&a));
        assert_eq!(span_closure(&a, &[a.elem("e")]).unwrap().dims(), (1, 0));
    }

    #[test]
    fn subalgebra_and_ideal_examples() {
        let a = k10();
        assert!(is_subalgebra(&a, &GradedSubspace::even_part(&a)));
        assert!(is_subalgebra(&a, &span_of(&a, &["p1"]).unwrap()));
        let b = maximal_subalgebra(MaximalKind::III).unwrap();
        let r = span_of(&a, &["c1", "a+b", "p1+q1"]).unwrap();
        assert!(is_ideal(&a, &r, &b).unwrap());
        assert!(is_ideal(&a, &GradedSubspace::whole(&a), &r).is_err());
        assert!(!is_subalgebra(&a, &span_of(&a, &["p1", "p2"]).unwrap()));
    }

    #[test]
    fn solvability_examples() {
        let a = k10();
        assert!(is_solvable(&a, &span_of(&a, &["c1", "a+b", "p1+q1"]).unwrap()));
        assert!(!is_solvable(&a, &span_of(&a, &["e"]).unwrap()));
        assert!(is_solvable(&a, &GradedSubspace::zero(&a)));
    }

    #[test]
    fn quotient_examples() {
        let a = k10();
        let b = maximal_subalgebra(MaximalKind::III).unwrap();
        let r = span_of(&a, &["c1", "a+b", "p1+q1"]).unwrap();
        let q = quotient(&a, &b, &r).unwrap();
        assert_eq!((q.quotient.dim_even(), q.quotient.dim_odd()), (2, 2));

        let zero = quotient(&a, &b, &GradedSubspace::zero(&a)).unwrap();
        assert_eq!(zero.quotient.entries(), subalgebra_algebra(&a, &b).unwrap().entries());

        let b4 = maximal_subalgebra(MaximalKind::IV).unwrap();
        let r4 = span_of(&a, &["c1", "p1", "q1"]).unwrap();
        let q4 = quotient(&a, &b4, &r4).unwrap();
        assert_eq!(q4.quotient.labels(), &["[e]", "[a]", "[b]", "[f]"]);
        assert_eq!(q4.quotient.dim_odd(), 0);
    }

    #[test]
    fn maximal_dims() {
        for kind in MaximalKind::ALL {
            assert_eq!(maximal_subalgebra(kind).unwrap().dims(), kind.expected_dims());
        }
    }

    #[test]
    fn probe_examples() {
        let a = k10();
        let even = GradedSubspace::even_part(&a);
        assert!(maximality_probe(&a, &even, 20, 7).unwrap().is_probably_maximal());
        let b = span_of(&a, &["e", "f", "c1", "p1", "q1"]).unwrap();
        match maximality_probe(&a, &b, 20, 7).unwrap() {
            ProbeVerdict::NotMaximal { witness, closure, extension } => {
                assert_eq!(witness, a.elem("a"));
                assert_eq!(closure.dims(), (4, 2));
                assert_eq!(extension, maximal_subalgebra(MaximalKind::IV).unwrap());
            }
            v => panic!("expected a refutation, got {v:?}"),
        }
        assert!(maximality_probe(&a, &GradedSubspace::whole(&a), 1, 1).is_err());
    }

    #[test]
    fn dt_examples() {
        let d = make_dt(&int(-3)).unwrap();
        assert_eq!(dt_parameter(&d).unwrap(), DtInvariant::Pair(int(-3), frac(-1, 3)));
        let d = make_dt(&int(2)).unwrap();
        assert_eq!(dt_parameter(&d).unwrap().to_string(), "{1/2, 2}");
        assert!(dt_parameter(&k10()).is_err());
    }

    #[test]
    fn dt_invariant_ignores_relabeling() {
        let d = make_dt(&frac(-3, 2)).unwrap();
        // Swap the idempotents and rescale one odd vector.
        let mut m = Matrix::zeros(4, 4);
        m.set(1, 0, int(1));
        m.set(0, 1, int(1));
        m.set(2, 2, int(5));
        m.set(3, 3, int(1));
        let relabeled = d.change_basis(&m, d.labels().to_vec()).unwrap();
        assert_eq!(dt_parameter(&relabeled).unwrap(), dt_parameter(&d).unwrap());
    }

    #[test]
    fn fixed_point_examples() {
        let a = Arc::new(k10());
        assert_eq!(fixed_subalgebra(&grading_automorphism(a.clone())).unwrap(), GradedSubspace::even_part(&a));
        assert_eq!(fixed_subalgebra(&Morphism::identity(a.clone())).unwrap(), GradedSubspace::whole(&a));
        assert_eq!(
            swap_fixed_subalgebra_table().unwrap(),
            span_of(&a, &["e", "f", "c1+c2", "p1-q2", "p2-q1"]).unwrap()
        );
    }

    #[test]
    fn witt_examples() {
        let q = k10_v_gram();
        let a = [int(1), int(0), int(0), int(0)];
        assert_eq!(witt_map(&a, &a, &q).unwrap(), Matrix::identity(4));
        let c = [int(0), int(0), int(1), int(1)];
        let g = witt_map(&a, &c, &q).unwrap();
        assert_eq!(g.mul_vec(&a).unwrap(), c.to_vec());
        assert_eq!(&(&g.transpose() * &q) * &g, q);
        let b = [int(0), int(1), int(0), int(0)];
        assert!(matches!(witt_map(&a, &b, &q), Err(Error::UnequalNorms(_, _))));
    }

    #[test]
    fn conjugation_examples() {
        for kind in [MaximalKind::II, MaximalKind::III, MaximalKind::IV] {
            let w = conjugation_witness(kind).unwrap();
            assert!(w.automorphism.is_isomorphism());
        }
    }

    #[test]
    fn structure_examples() {
        let r = structure_report(MaximalKind::III).unwrap();
        assert_eq!(r.radical.unwrap().dims(), (2, 1));
        assert_eq!(r.dt.unwrap(), DtInvariant::Pair(int(-3), frac(-1, 3)));
        let r = structure_report(MaximalKind::IV).unwrap();
        assert_eq!(r.quotient.unwrap().dim(), 4);
        let r = structure_report(MaximalKind::II).unwrap();
        let a = k10();
        assert!(a.mul(&a.parse_element("2e - a").unwrap(), &a.elem("p1")).is_zero());
        println!("dt of (ii) summand: {}", r.dt.unwrap());
        assert!(structure_report(MaximalKind::I).is_ok());
    }
}
