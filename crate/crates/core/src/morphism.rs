//! Graded linear maps between superalgebras and the automorphism machinery of
//! `K10`.
//!
//! The wreath product `G = Sp(W) ≀ C2` acts on the tensor model
//! `F1 ⊕ (K3 ⊗ K3)` through [`phi`]; restricting automorphisms to
//! `V = W ⊗ W` gives [`psi`], and [`psi_tilde`] is the direct action of `G`
//! on `V`. [`factor_orthogonal`] inverts `psi_tilde` constructively.
//!
//! Matrices act on column vectors: column `j` holds the image of basis vector
//! `j`. For `W = span{x, y}` with `(x|y) = 1`, `V` is ordered
//! `x⊗x, x⊗y, y⊗x, y⊗y`.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Element, SuperAlgebra};
use crate::catalog::{make_k10_table, make_k10_tensor, make_k3, tensor_factors, tensor_index};
use crate::error::{Error, Result};
use crate::identities::{IdentityReport, Witness};
use crate::linear::{format_scalar, height, int, parse_scalar, rational_sqrt, Matrix, Scalar};

/// Indices of `V = W⊗W` inside the tensor model.
pub const V_RANGE: std::ops::Range<usize> = 2..6;

/// Grading-preserving linear map `source -> target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Arc<SuperAlgebra>,
    target: Arc<SuperAlgebra>,
    matrix: Matrix,
}

impl Morphism {
    pub fn new(source: Arc<SuperAlgebra>, target: Arc<SuperAlgebra>, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for a map {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        for j in 0..source.dim() {
            for i in 0..target.dim() {
                if source.parity(j) != target.parity(i) && !matrix.get(i, j).is_zero() {
                    return Err(Error::InvalidArgument(format!(
                        "map is not graded: basis vector {} has a component on {}",
                        source.labels()[j],
                        target.labels()[i]
                    )));
                }
            }
        }
        Ok(Morphism { source, target, matrix })
    }

    pub fn from_images(
        source: Arc<SuperAlgebra>,
        target: Arc<SuperAlgebra>,
        images: &[Element],
    ) -> Result<Self> {
        let cols: Vec<Vec<Scalar>> = images.iter().map(|e| e.coords().to_vec()).collect();
        if cols.len() != source.dim() {
            return Err(Error::Dimension(format!(
                "{} images for a source of dimension {}",
                cols.len(),
                source.dim()
            )));
        }
        let matrix = Matrix::from_columns(target.dim(), &cols)?;
        Morphism::new(source, target, matrix)
    }

    pub fn identity(a: Arc<SuperAlgebra>) -> Self {
        let n = a.dim();
        Morphism { source: a.clone(), target: a, matrix: Matrix::identity(n) }
    }

    pub fn source(&self) -> &Arc<SuperAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SuperAlgebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &Element) -> Element {
        Element::from_coords(self.matrix.mul_vec(x.coords()).expect("element of the source"))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        if other.target.as_ref() != self.source.as_ref() {
            return Err(Error::InvalidArgument("composition of non-matching maps".into()));
        }
        Morphism::new(other.source.clone(), self.target.clone(), &self.matrix * &other.matrix)
    }

    pub fn inverse(&self) -> Result<Morphism> {
        Morphism::new(self.target.clone(), self.source.clone(), self.matrix.invert()?)
    }

    /// Checks `φ(b_i b_j) = φ(b_i) φ(b_j)` on every ordered basis pair.
    pub fn is_homomorphism(&self) -> IdentityReport {
        let s = &self.source;
        let t = &self.target;
        let images: Vec<Element> = (0..s.dim()).map(|i| self.apply(&s.basis(i))).collect();
        let mut witnesses = Vec::new();
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let lhs = self.apply(&Element::from_sparse(s.dim(), s.basis_product(i, j)));
                let rhs = t.mul(&images[i], &images[j]);
                let d = &lhs - &rhs;
                if !d.is_zero() {
                    witnesses.push(Witness { indices: vec![i, j], defect: d });
                }
            }
        }
        IdentityReport {
            identity: "homomorphism".into(),
            witnesses,
            evaluated: s.dim() * s.dim(),
            notes: Vec::new(),
        }
    }

    pub fn is_isomorphism(&self) -> bool {
        self.matrix.is_square() && self.matrix.invert().is_ok() && self.is_homomorphism().passed()
    }

    pub fn to_map_file(&self) -> MapFile {
        MapFile {
            images: (0..self.matrix.cols())
                .map(|j| self.matrix.column(j).iter().map(format_scalar).collect())
                .collect(),
        }
    }

    pub fn from_map_file(
        file: &MapFile,
        source: Arc<SuperAlgebra>,
        target: Arc<SuperAlgebra>,
    ) -> Result<Self> {
        let cols: Vec<Vec<Scalar>> = file
            .images
            .iter()
            .map(|c| c.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        if cols.len() != source.dim() {
            return Err(Error::Dimension(format!(
                "map file has {} images, source dimension is {}",
                cols.len(),
                source.dim()
            )));
        }
        let matrix = Matrix::from_columns(target.dim(), &cols)?;
        Morphism::new(source, target, matrix)
    }
}

/// On-disk form of a morphism: one coefficient list per source basis vector.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapFile {
    pub images: Vec<Vec<String>>,
}

/// The map `K10 -> F1 ⊕ (K3⊗K3)` sending the table basis to the images
/// below, verified to be an isomorphism.
pub fn table_tensor_iso() -> Result<Morphism> {
    let table = Arc::new(make_k10_table());
    let tensor = Arc::new(make_k10_tensor());
    let images = [
        "3/2*1 - 2*e⊗e",
        "-4*x⊗x - y⊗y",
        "-4*x⊗x + y⊗y",
        "2*x⊗y",
        "-2*y⊗x",
        "-1/2*1 + 2*e⊗e",
        "4*x⊗e - 2*e⊗y",
        "-4*e⊗x - 2*y⊗e",
        "4*x⊗e + 2*e⊗y",
        "-4*e⊗x + 2*y⊗e",
    ]
    .iter()
    .map(|s| tensor.parse_element(s))
    .collect::<Result<Vec<_>>>()?;
    let m = Morphism::from_images(table, tensor, &images)?;
    if !m.is_isomorphism() {
        return Err(Error::Verification("table-to-tensor map is not an isomorphism".into()));
    }
    Ok(m)
}

/// `τ(z) = (-1)^{z̄} z`.
pub fn grading_automorphism(a: Arc<SuperAlgebra>) -> Morphism {
    let diag: Vec<Scalar> =
        (0..a.dim()).map(|i| if a.parity(i) == 0 { int(1) } else { int(-1) }).collect();
    Morphism { source: a.clone(), target: a, matrix: Matrix::diagonal(&diag) }
}

fn swap_matrix() -> Matrix {
    let k3 = make_k3();
    let mut m = Matrix::zeros(10, 10);
    m.set(0, 0, int(1));
    for i in 1..10 {
        let (a, b) = tensor_factors(i);
        let s = if k3.parity(a) * k3.parity(b) == 1 { -1 } else { 1 };
        m.set(tensor_index(b, a), i, int(s));
    }
    m
}

/// `δ: λ1 + a⊗b ↦ λ1 + (-1)^{āb̄} b⊗a` on the tensor model, verified to be an
/// automorphism.
pub fn swap_automorphism() -> Result<Morphism> {
    let tensor = Arc::new(make_k10_tensor());
    let m = Morphism::new(tensor.clone(), tensor, swap_matrix())?;
    if !m.is_isomorphism() {
        return Err(Error::Verification("swap map is not an automorphism".into()));
    }
    Ok(m)
}

fn lift_block(f: &Matrix) -> Matrix {
    Matrix::identity(1).block_diag(f)
}

/// Automorphism of `K3` fixing `e` and acting by `f` on `W = span{x, y}`.
pub fn lift_sp_to_k3(f: &Matrix) -> Result<Morphism> {
    check_sl2(f)?;
    let k3 = Arc::new(make_k3());
    let m = Morphism::new(k3.clone(), k3, lift_block(f))?;
    if !m.is_homomorphism().passed() {
        return Err(Error::Verification("lifted map is not an automorphism of K3".into()));
    }
    Ok(m)
}

fn check_sl2(f: &Matrix) -> Result<()> {
    if f.rows() != 2 || f.cols() != 2 {
        return Err(Error::Dimension("symplectic maps of W are 2x2".into()));
    }
    if !f.det()?.is_one() {
        return Err(Error::NotSymplectic);
    }
    Ok(())
}

/// Element `(f, g)·ε^swap` of `Sp(W) ≀ C2`, acting as `Φ_(f,g) ∘ δ^swap`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    f: Matrix,
    g: Matrix,
    swap: bool,
}

impl WreathElement {
    pub fn new(f: Matrix, g: Matrix, swap: bool) -> Result<Self> {
        check_sl2(&f)?;
        check_sl2(&g)?;
        Ok(WreathElement { f, g, swap })
    }

    pub fn identity() -> Self {
        WreathElement { f: Matrix::identity(2), g: Matrix::identity(2), swap: false }
    }

    /// `(-id, -id)`, the nontrivial kernel element of `psi_tilde`.
    pub fn minus_identity() -> Self {
        let m = -&Matrix::identity(2);
        WreathElement { f: m.clone(), g: m, swap: false }
    }

    pub fn epsilon() -> Self {
        WreathElement { swap: true, ..Self::identity() }
    }

    pub fn f(&self) -> &Matrix {
        &self.f
    }

    pub fn g(&self) -> &Matrix {
        &self.g
    }

    pub fn swap(&self) -> bool {
        self.swap
    }

    /// `(-f, -g, swap)`: the same element up to the kernel sign.
    pub fn negated(&self) -> Self {
        WreathElement { f: -&self.f, g: -&self.g, swap: self.swap }
    }

    /// Equality up to the kernel `{±(id, id)}`.
    pub fn eq_up_to_sign(&self, other: &WreathElement) -> bool {
        self == other || self == &other.negated()
    }

    /// Flips the overall sign so the first nonzero entry of `f` is positive.
    pub fn canonical(self) -> Self {
        let first = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| self.f.get(i, j).clone())
            .find(|x| !x.is_zero())
            .expect("f is invertible");
        if first.is_negative() {
            self.negated()
        } else {
            self
        }
    }

    /// Random element with symplectic factors whose entries have height at
    /// most `max_height`.
    pub fn random<R: Rng>(rng: &mut R, max_height: i64) -> Self {
        let f = random_sl2(rng, max_height);
        let g = random_sl2(rng, max_height);
        WreathElement { f, g, swap: rng.gen_bool(0.5) }
    }

    pub fn to_file(&self) -> WreathFile {
        let rows = |m: &Matrix| {
            m.to_rows().iter().map(|r| r.iter().map(format_scalar).collect()).collect()
        };
        WreathFile { f: rows(&self.f), g: rows(&self.g), swap: self.swap }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WreathFile {
    pub f: Vec<Vec<String>>,
    pub g: Vec<Vec<String>>,
    pub swap: bool,
}

fn random_sl2<R: Rng>(rng: &mut R, max_height: i64) -> Matrix {
    let bound = num_bigint::BigInt::from(max_height);
    loop {
        let a = rng.gen_range(-max_height..=max_height);
        if a == 0 {
            continue;
        }
        let b = rng.gen_range(-max_height..=max_height);
        let c = rng.gen_range(-max_height..=max_height);
        let d = Scalar::new((1 + b * c).into(), a.into());
        if height(&d) <= bound {
            let mut m = Matrix::zeros(2, 2);
            m.set(0, 0, int(a));
            m.set(0, 1, int(b));
            m.set(1, 0, int(c));
            m.set(1, 1, d);
            return m;
        }
    }
}

/// Group law: `(f,g,s)·(f',g',s')` with `δ Φ_(f',g') δ = Φ_(g',f')`.
pub fn wreath_compose(w1: &WreathElement, w2: &WreathElement) -> WreathElement {
    let (f2, g2) = if w1.swap { (&w2.g, &w2.f) } else { (&w2.f, &w2.g) };
    WreathElement { f: &w1.f * f2, g: &w1.g * g2, swap: w1.swap ^ w2.swap }
}

pub fn wreath_invert(w: &WreathElement) -> WreathElement {
    let fi = w.f.invert().expect("determinant one");
    let gi = w.g.invert().expect("determinant one");
    if w.swap {
        WreathElement { f: gi, g: fi, swap: true }
    } else {
        WreathElement { f: fi, g: gi, swap: false }
    }
}

/// `Φ(w)`: automorphism of the tensor model.
pub fn phi(w: &WreathElement) -> Morphism {
    let ft = lift_block(&w.f);
    let gt = lift_block(&w.g);
    let mut m = Matrix::zeros(10, 10);
    m.set(0, 0, int(1));
    for i in 1..10 {
        let (a, b) = tensor_factors(i);
        for k in 0..3 {
            for l in 0..3 {
                let c = ft.get(k, a) * gt.get(l, b);
                if !c.is_zero() {
                    m.set(tensor_index(k, l), i, c);
                }
            }
        }
    }
    if w.swap {
        m = &m * &swap_matrix();
    }
    let tensor = Arc::new(make_k10_tensor());
    Morphism::new(tensor.clone(), tensor, m).expect("tensor action is graded")
}

/// Gram matrix of `b(s⊗t, s'⊗t') = (s|s')(t|t')` on `V`.
pub fn v_gram() -> Matrix {
    let w = Matrix::from_i64(&[&[0, 1], &[-1, 0]]);
    w.kron(&w)
}

/// Isometry of `(V, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalMap {
    matrix: Matrix,
}

impl OrthogonalMap {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.rows() != 4 || matrix.cols() != 4 {
            return Err(Error::Dimension("maps of V are 4x4".into()));
        }
        let gram = v_gram();
        if &(&matrix.transpose() * &gram) * &matrix != gram {
            return Err(Error::NotOrthogonal);
        }
        Ok(OrthogonalMap { matrix })
    }

    pub fn identity() -> Self {
        OrthogonalMap { matrix: Matrix::identity(4) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn compose(&self, other: &OrthogonalMap) -> OrthogonalMap {
        OrthogonalMap { matrix: &self.matrix * &other.matrix }
    }
}

/// `ε̂: s⊗t ↦ -t⊗s`.
pub fn epsilon_hat() -> OrthogonalMap {
    let mut m = Matrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            m.set(2 * j + i, 2 * i + j, int(-1));
        }
    }
    OrthogonalMap { matrix: m }
}

/// `Ψ(m) = m|_V` for an automorphism of the tensor model.
pub fn psi(m: &Morphism) -> Result<OrthogonalMap> {
    let tensor = make_k10_tensor();
    if m.source.as_ref() != &tensor || m.target.as_ref() != &tensor {
        return Err(Error::InvalidArgument("psi expects a map of the tensor model".into()));
    }
    for j in V_RANGE {
        for i in (0..10).filter(|i| !V_RANGE.contains(i)) {
            if !m.matrix.get(i, j).is_zero() {
                return Err(Error::NotInvariant(format!(
                    "image of {} has a component on {}",
                    tensor.labels()[j],
                    tensor.labels()[i]
                )));
            }
        }
    }
    OrthogonalMap::new(m.matrix.submatrix(V_RANGE, V_RANGE))
}

/// `Ψ̃(f, g, swap) = (f⊗g) ∘ ε̂^swap`.
pub fn psi_tilde(w: &WreathElement) -> OrthogonalMap {
    let mut m = w.f.kron(&w.g);
    if w.swap {
        m = &m * epsilon_hat().matrix();
    }
    OrthogonalMap { matrix: m }
}

/// Writes an isotropic `v ∈ W⊗W` as `s⊗t`, normalized so the first nonzero
/// coordinate of `s` is 1.
pub fn factor_isotropic(v: &[Scalar]) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    if v.len() != 4 {
        return Err(Error::Dimension("vectors of V have 4 coordinates".into()));
    }
    if v.iter().all(Zero::is_zero) {
        return Err(Error::InvalidArgument("cannot factor the zero vector".into()));
    }
    // v[2i + j] is the coefficient of w_i ⊗ w_j; b(v, v) = 2 det.
    let det = &v[0] * &v[3] - &v[1] * &v[2];
    if !det.is_zero() {
        return Err(Error::NotIsotropic);
    }
    let i0 = if v[0].is_zero() && v[1].is_zero() { 1 } else { 0 };
    let t = vec![v[2 * i0].clone(), v[2 * i0 + 1].clone()];
    let j0 = if t[0].is_zero() { 1 } else { 0 };
    let s: Vec<Scalar> = (0..2).map(|i| &v[2 * i + j0] / &t[j0]).collect();
    Ok((s, t))
}

/// Some `A ∈ SL2` with `A x = s`.
fn sl2_with_first_column(s: &[Scalar]) -> Matrix {
    let mut a = Matrix::zeros(2, 2);
    a.set(0, 0, s[0].clone());
    a.set(1, 0, s[1].clone());
    if !s[0].is_zero() {
        a.set(1, 1, s[0].recip());
    } else {
        a.set(0, 1, -s[1].recip());
    }
    a
}

/// Inverts [`psi_tilde`] following the surjectivity argument: normalize
/// `m(x⊗x) = x⊗x`, then `m(y⊗y) = y⊗y`, then use `ε̂` so that
/// `m(x⊗y) = γ x⊗y`, and finally split `γ = μ²`.
///
/// The result is canonicalized up to the kernel `{±(id, id)}`. Fails with
/// [`Error::NonSquareScalar`] when `γ` is not a rational square.
pub fn factor_orthogonal(m: &OrthogonalMap) -> Result<WreathElement> {
    let m = OrthogonalMap::new(m.matrix.clone())?;
    let mut steps: Vec<WreathElement> = Vec::new();
    let mut current = m.matrix.clone();
    let mut apply = |w: WreathElement, current: &mut Matrix| {
        *current = psi_tilde(&w).matrix() * &*current;
        steps.push(w);
    };

    // m(x⊗x) = s⊗t; choose f(s) = x, g(t) = x.
    let (s, t) = factor_isotropic(&current.column(0))?;
    let f1 = sl2_with_first_column(&s).invert()?;
    let g1 = sl2_with_first_column(&t).invert()?;
    apply(WreathElement::new(f1, g1, false)?, &mut current);

    // m(y⊗y) = s⊗t with (x|s)(x|t) = 1; α = (x|s) is the y-coordinate of s.
    let (s, t) = factor_isotropic(&current.column(3))?;
    let alpha = s[1].clone();
    if alpha.is_zero() {
        return Err(Error::Verification("m(y⊗y) pairs trivially with x⊗x".into()));
    }
    let f2 = Matrix::from_rows(
        2,
        vec![vec![int(1), &s[0] / &alpha], vec![int(0), &s[1] / &alpha]],
    )?;
    let g2 = Matrix::from_rows(
        2,
        vec![vec![int(1), &t[0] * &alpha], vec![int(0), &t[1] * &alpha]],
    )?;
    apply(WreathElement::new(f2.invert()?, g2.invert()?, false)?, &mut current);

    // m(x⊗y) lies on x⊗y or y⊗x; in the latter case swap with s⊗t ↦ t⊗s,
    // which is Ψ̃(-id, id, ε) and fixes x⊗x and y⊗y.
    if !current.get(2, 1).is_zero() {
        let minus = -&Matrix::identity(2);
        apply(WreathElement::new(minus, Matrix::identity(2), true)?, &mut current);
    }
    let gamma = current.get(1, 1).clone();
    let mu = rational_sqrt(&gamma).ok_or_else(|| Error::NonSquareScalar(gamma.clone()))?;
    let mu_inv = mu.recip();
    let last = WreathElement::new(
        Matrix::diagonal(&[mu.clone(), mu_inv.clone()]),
        Matrix::diagonal(&[mu_inv, mu]),
        false,
    )?;
    if psi_tilde(&last).matrix() != &current {
        return Err(Error::Verification("residual map is not diagonal".into()));
    }

    // current = Ψ̃(w_k) ... Ψ̃(w_1) m, so m = Ψ̃(w_1⁻¹ ... w_k⁻¹ last).
    let mut result = last;
    for w in steps.iter().rev() {
        result = wreath_compose(&wreath_invert(w), &result);
    }
    let result = result.canonical();
    if psi_tilde(&result) != m {
        return Err(Error::Verification("factorization does not reproduce the map".into()));
    }
    Ok(result)
}

/// `Φ(factor_orthogonal(m))`: an automorphism of the tensor model restricting
/// to `m` on `V`.
pub fn lift_orthogonal_to_aut(m: &OrthogonalMap) -> Result<Morphism> {
    Ok(phi(&factor_orthogonal(m)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::frac;

    fn mat(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(rows)
    }

    #[test]
    fn homomorphism_examples() {
        let k10 = Arc::new(make_k10_table());
        assert!(Morphism::identity(k10.clone()).is_homomorphism().passed());
        let tau = grading_automorphism(k10.clone());
        assert!(tau.is_homomorphism().passed());
        assert!(tau.is_isomorphism());

        // e ↦ f, everything else fixed: e·e = e maps to f but f·f = f ... the
        // pair (e, a) breaks: e·a = a ↦ a while f·a = 0.
        let mut m = Matrix::identity(10);
        m.set(0, 0, int(0));
        m.set(5, 0, int(1));
        let broken = Morphism::new(k10.clone(), k10.clone(), m).unwrap();
        let report = broken.is_homomorphism();
        assert!(!report.passed());
        assert!(report.witnesses.iter().any(|w| w.indices == vec![0, 1]));

        let zero = Morphism::new(k10.clone(), k10, Matrix::zeros(10, 10)).unwrap();
        assert!(!zero.is_isomorphism());
    }

    #[test]
    fn ungraded_maps_are_rejected() {
        let k10 = Arc::new(make_k10_table());
        let mut m = Matrix::identity(10);
        m.set(6, 0, int(1));
        assert!(Morphism::new(k10.clone(), k10, m).is_err());
    }

    #[test]
    fn table_tensor_images() {
        let iso = table_tensor_iso().unwrap();
        let t = iso.target().clone();
        let s = iso.source().clone();
        assert_eq!(iso.apply(&s.elem("e")), t.parse_element("3/2*1 - 2*e⊗e").unwrap());
        assert_eq!(iso.apply(&s.elem("c2")), t.parse_element("-2*y⊗x").unwrap());
        assert_eq!(iso.apply(&s.parse_element("e + f").unwrap()), t.elem("1"));
    }

    #[test]
    fn grading_automorphism_is_involutive() {
        let k10 = Arc::new(make_k10_table());
        let tau = grading_automorphism(k10.clone());
        assert_eq!(tau.apply(&k10.elem("e")), k10.elem("e"));
        assert_eq!(tau.apply(&k10.elem("p1")), -&k10.elem("p1"));
        assert_eq!(tau.compose(&tau).unwrap(), Morphism::identity(k10));
    }

    #[test]
    fn swap_examples() {
        let d = swap_automorphism().unwrap();
        let t = d.source().clone();
        assert_eq!(d.apply(&t.elem("x⊗y")), -&t.elem("y⊗x"));
        assert_eq!(d.apply(&t.elem("e⊗x")), t.elem("x⊗e"));
        assert_eq!(d.apply(&t.elem("1")), t.elem("1"));
    }

    #[test]
    fn k3_lifts() {
        assert_eq!(
            lift_sp_to_k3(&Matrix::identity(2)).unwrap(),
            Morphism::identity(Arc::new(make_k3()))
        );
        let j = lift_sp_to_k3(&mat(&[&[0, 1], &[-1, 0]])).unwrap();
        let k3 = j.source().clone();
        assert_eq!(j.apply(&k3.elem("x")), -&k3.elem("y"));
        assert_eq!(j.apply(&k3.elem("y")), k3.elem("x"));
        assert!(matches!(lift_sp_to_k3(&mat(&[&[2, 0], &[0, 1]])), Err(Error::NotSymplectic)));
    }

    #[test]
    fn phi_examples() {
        let tensor = Arc::new(make_k10_tensor());
        assert_eq!(phi(&WreathElement::identity()), Morphism::identity(tensor.clone()));
        assert_eq!(phi(&WreathElement::minus_identity()), grading_automorphism(tensor));
        assert_eq!(phi(&WreathElement::epsilon()), swap_automorphism().unwrap());
    }

    #[test]
    fn psi_examples() {
        let tensor = Arc::new(make_k10_tensor());
        assert_eq!(psi(&grading_automorphism(tensor.clone())).unwrap(), OrthogonalMap::identity());
        assert_eq!(psi(&swap_automorphism().unwrap()).unwrap(), epsilon_hat());
        assert_eq!(psi(&Morphism::identity(tensor.clone())).unwrap(), OrthogonalMap::identity());
        let mut m = Matrix::identity(10);
        m.set(0, 2, int(1));
        let bad = Morphism::new(tensor.clone(), tensor, m).unwrap();
        assert!(matches!(psi(&bad), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn psi_tilde_examples() {
        assert_eq!(psi_tilde(&WreathElement::identity()), OrthogonalMap::identity());
        assert_eq!(psi_tilde(&WreathElement::minus_identity()), OrthogonalMap::identity());
        let j = mat(&[&[0, 1], &[-1, 0]]);
        let w = WreathElement::new(j.clone(), j.clone(), false).unwrap();
        let m = psi_tilde(&w);
        assert_eq!(m.matrix(), &j.kron(&j));
        assert!(OrthogonalMap::new(m.matrix().clone()).is_ok());
    }

    #[test]
    fn factor_isotropic_examples() {
        let (s, t) = factor_isotropic(&[int(0), int(2), int(0), int(0)]).unwrap();
        assert_eq!((s, t), (vec![int(1), int(0)], vec![int(0), int(2)]));
        let (s, t) = factor_isotropic(&[int(1), int(0), int(0), int(0)]).unwrap();
        assert_eq!((s, t), (vec![int(1), int(0)], vec![int(1), int(0)]));
        assert!(matches!(
            factor_isotropic(&[int(1), int(0), int(0), int(1)]),
            Err(Error::NotIsotropic)
        ));
        assert!(factor_isotropic(&[int(0), int(0), int(0), int(0)]).is_err());
        // y⊗(x + 3y) scaled.
        let (s, t) = factor_isotropic(&[int(0), int(0), int(2), int(6)]).unwrap();
        assert_eq!(s, vec![int(0), int(1)]);
        assert_eq!(t, vec![int(2), int(6)]);
    }

    #[test]
    fn factor_orthogonal_examples() {
        assert_eq!(factor_orthogonal(&OrthogonalMap::identity()).unwrap(), WreathElement::identity());

        let w = WreathElement::new(mat(&[&[1, 1], &[0, 1]]), mat(&[&[1, 0], &[2, 1]]), true).unwrap();
        assert!(factor_orthogonal(&psi_tilde(&w)).unwrap().eq_up_to_sign(&w));

        let w = WreathElement::new(
            Matrix::diagonal(&[int(2), frac(1, 2)]),
            Matrix::diagonal(&[int(3), frac(1, 3)]),
            false,
        )
        .unwrap();
        assert!(factor_orthogonal(&psi_tilde(&w)).unwrap().eq_up_to_sign(&w));
    }

    #[test]
    fn factor_orthogonal_reports_non_squares() {
        // Ψ̃(diag(√2, 1/√2), diag(1/√2, √2)) is rational but the factors are not.
        let m = OrthogonalMap::new(Matrix::diagonal(&[int(1), int(2), frac(1, 2), int(1)])).unwrap();
        match factor_orthogonal(&m) {
            Err(Error::NonSquareScalar(g)) => assert_eq!(g, int(2)),
            other => panic!("expected NonSquareScalar, got {other:?}"),
        }
        assert!(matches!(
            factor_orthogonal(&OrthogonalMap { matrix: Matrix::diagonal(&[int(2), int(1), int(1), int(1)]) }),
            Err(Error::NotOrthogonal)
        ));
    }

    #[test]
    fn lift_examples() {
        let tensor = Arc::new(make_k10_tensor());
        assert_eq!(lift_orthogonal_to_aut(&OrthogonalMap::identity()).unwrap(), Morphism::identity(tensor));
        assert_eq!(lift_orthogonal_to_aut(&epsilon_hat()).unwrap(), swap_automorphism().unwrap());
    }

    #[test]
    fn wreath_law_examples() {
        let f = mat(&[&[1, 1], &[0, 1]]);
        let g = mat(&[&[1, 0], &[2, 1]]);
        let f2 = mat(&[&[2, 1], &[1, 1]]);
        let g2 = mat(&[&[1, 3], &[0, 1]]);
        let w1 = WreathElement::new(f.clone(), g.clone(), true).unwrap();
        let w2 = WreathElement::new(f2.clone(), g2.clone(), false).unwrap();
        let c = wreath_compose(&w1, &w2);
        assert_eq!(c, WreathElement::new(&f * &g2, &g * &f2, true).unwrap());
        assert_eq!(wreath_compose(&w1, &wreath_invert(&w1)), WreathElement::identity());
        let e = WreathElement::epsilon();
        assert_eq!(wreath_compose(&e, &e), WreathElement::identity());
    }
}
