//! Identity checks: supercommutativity, the super-Jordan identity, the Jordan
//! identity for purely even algebras, and Jordan checks on truncated Grassmann
//! envelopes.
//!
//! Basis sweeps run in parallel over the first index and are concatenated in
//! index order, so reports are identical for any thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{Element, SuperAlgebra};
use crate::catalog::{grassmann_masks, monomial_label, monomial_sign};
use crate::error::{Error, Result};
use crate::linear::{int, Scalar};

/// Over the rationals the characteristic is 0, so the two-identity
/// characterization of Jordan superalgebras (valid in characteristic ≠ 2, 3)
/// applies unconditionally.
pub const CHARACTERISTIC_NOTE: &str =
    "supercommutativity + super-Jordan characterize Jordan superalgebras in characteristic != 2,3; scalars are rational (characteristic 0)";

/// A basis-index tuple (or trial index) together with the nonzero defect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub defect: Element,
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub identity: String,
    pub witnesses: Vec<Witness>,
    /// Number of tuples (or trials) evaluated.
    pub evaluated: usize,
    pub notes: Vec<String>,
}

impl IdentityReport {
    fn new(identity: &str, witnesses: Vec<Witness>, evaluated: usize) -> Self {
        IdentityReport { identity: identity.to_string(), witnesses, evaluated, notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    fn merge(mut self, other: IdentityReport) -> Self {
        self.witnesses.extend(other.witnesses);
        self.evaluated += other.evaluated;
        self
    }
}

fn sign(exponent: u8) -> Scalar {
    int(if exponent.is_multiple_of(2) { 1 } else { -1 })
}

fn parity_of(a: &SuperAlgebra, x: &Element) -> u8 {
    a.homogeneous_parity(x).expect("identity arguments must be homogeneous")
}

/// `xy - (-1)^{x̄ȳ} yx` for homogeneous `x, y`.
pub fn supercommutator_defect(a: &SuperAlgebra, x: &Element, y: &Element) -> Element {
    let s = sign(parity_of(a, x) * parity_of(a, y));
    &a.mul(x, y) - &a.mul(y, x).scale(&s)
}

/// `Σ_{cyclic x,y,t} (-1)^{(x̄+z̄)t̄} (xy, z, t)` for homogeneous arguments.
pub fn super_jordan_defect(
    a: &SuperAlgebra,
    x: &Element,
    y: &Element,
    z: &Element,
    t: &Element,
) -> Element {
    let pz = parity_of(a, z);
    let mut total = a.zero();
    for (u, v, w) in [(x, y, t), (y, t, x), (t, x, y)] {
        let s = sign((parity_of(a, u) + pz) * parity_of(a, w));
        let uv = a.mul(u, v);
        let assoc = &a.mul(&a.mul(&uv, z), w) - &a.mul(&uv, &a.mul(z, w));
        total = &total + &assoc.scale(&s);
    }
    total
}

/// Full linearization of `(x², y, x)` in `x`:
/// `Σ_{σ ∈ S3} ((x_σ1 x_σ2) y) x_σ3 - (x_σ1 x_σ2)(y x_σ3)`.
pub fn linearized_jordan_defect(
    a: &SuperAlgebra,
    x1: &Element,
    x2: &Element,
    x3: &Element,
    y: &Element,
) -> Element {
    let xs = [x1, x2, x3];
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut total = a.zero();
    for p in perms {
        let sq = a.mul(xs[p[0]], xs[p[1]]);
        let left = a.mul(&a.mul(&sq, y), xs[p[2]]);
        let right = a.mul(&sq, &a.mul(y, xs[p[2]]));
        total = &(&total + &left) - &right;
    }
    total
}

fn require_graded(a: &SuperAlgebra) -> Result<()> {
    let g = a.check_grading();
    if !g.passed() {
        return Err(Error::Ungraded(g.violations.len()));
    }
    Ok(())
}

/// Evaluates `xy - (-1)^{x̄ȳ} yx` on every ordered basis pair.
pub fn check_supercommutativity(a: &SuperAlgebra) -> Result<IdentityReport> {
    require_graded(a)?;
    let dim = a.dim();
    let witnesses: Vec<Witness> = (0..dim)
        .into_par_iter()
        .map(|i| {
            (0..dim)
                .filter_map(|j| {
                    let d = supercommutator_defect(a, &a.basis(i), &a.basis(j));
                    (!d.is_zero()).then(|| Witness { indices: vec![i, j], defect: d })
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<Vec<_>>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(IdentityReport::new("supercommutativity", witnesses, dim * dim))
}

/// Evaluates the super-Jordan cyclic sum on all `dim⁴` basis quadruples
/// `(x, y, z, t)`. By multilinearity this decides the identity.
pub fn check_super_jordan(a: &SuperAlgebra) -> Result<IdentityReport> {
    let sc = check_supercommutativity(a)?;
    if !sc.passed() {
        return Err(Error::NotSupercommutative(sc.witnesses.len()));
    }
    let dim = a.dim();
    let basis: Vec<Element> = (0..dim).map(|i| a.basis(i)).collect();
    let witnesses: Vec<Witness> = (0..dim)
        .into_par_iter()
        .map(|x| {
            let mut found = Vec::new();
            for y in 0..dim {
                for z in 0..dim {
                    for t in 0..dim {
                        let d = super_jordan_defect(a, &basis[x], &basis[y], &basis[z], &basis[t]);
                        if !d.is_zero() {
                            found.push(Witness { indices: vec![x, y, z, t], defect: d });
                        }
                    }
                }
            }
            found
        })
        .collect::<Vec<Vec<_>>>()
        .into_iter()
        .flatten()
        .collect();
    let mut report = IdentityReport::new("super-jordan", witnesses, dim.pow(4));
    report.notes.push(CHARACTERISTIC_NOTE.to_string());
    Ok(report)
}

/// Jordan algebra check for a purely even algebra: commutativity on basis
/// pairs plus the full linearization of `(x², y, x) = 0` on basis quadruples.
pub fn check_jordan(a: &SuperAlgebra) -> Result<IdentityReport> {
    if a.dim_odd() != 0 {
        return Err(Error::NotEven);
    }
    let dim = a.dim();
    let basis: Vec<Element> = (0..dim).map(|i| a.basis(i)).collect();
    let mut comm = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let d = &a.mul(&basis[i], &basis[j]) - &a.mul(&basis[j], &basis[i]);
            if !d.is_zero() {
                comm.push(Witness { indices: vec![i, j], defect: d });
            }
        }
    }
    let lin: Vec<Witness> = (0..dim)
        .into_par_iter()
        .map(|i| {
            let mut found = Vec::new();
            for j in 0..dim {
                for k in 0..dim {
                    for l in 0..dim {
                        let d =
                            linearized_jordan_defect(a, &basis[i], &basis[j], &basis[k], &basis[l]);
                        if !d.is_zero() {
                            found.push(Witness { indices: vec![i, j, k, l], defect: d });
                        }
                    }
                }
            }
            found
        })
        .collect::<Vec<Vec<_>>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(IdentityReport::new("commutativity", comm, dim * dim)
        .merge(IdentityReport::new("jordan", lin, dim.pow(4)))
        .renamed("jordan"))
}

impl IdentityReport {
    fn renamed(mut self, name: &str) -> Self {
        self.identity = name.to_string();
        self
    }
}

/// Even part `G_0 ⊗ A_0 ⊕ G_1 ⊗ A_1` of `G(n) ⊗ A`, with product
/// `(g⊗u)(h⊗v) = gh ⊗ uv`. Basis: for each basis vector of `A` in order, the
/// Grassmann monomials of matching parity in increasing bitmask order.
pub fn grassmann_envelope(a: &SuperAlgebra, n: usize) -> Result<SuperAlgebra> {
    if !(1..=8).contains(&n) {
        return Err(Error::InvalidArgument(format!("envelope degree {n} must be in 1..=8")));
    }
    require_graded(a)?;
    let masks = grassmann_masks(n);
    let mut basis: Vec<(u32, usize)> = Vec::new();
    for i in 0..a.dim() {
        let p = u32::from(a.parity(i));
        basis.extend(masks.iter().filter(|m| m.count_ones() % 2 == p).map(|&m| (m, i)));
    }
    let index = |m: u32, i: usize| basis.iter().position(|&b| b == (m, i)).unwrap();
    let names: Vec<String> = basis
        .iter()
        .map(|&(m, i)| format!("{}⊗{}", monomial_label(m), a.labels()[i]))
        .collect();
    let dim = basis.len();
    SuperAlgebra::from_fn(format!("G{n}({})", a.name()), dim, 0, names, |x, y| {
        let (s, i) = basis[x];
        let (t, j) = basis[y];
        let mut out = vec![Scalar::from_integer(0.into()); dim];
        if let Some(sg) = monomial_sign(s, t) {
            for (k, c) in a.basis_product(i, j) {
                out[index(s | t, *k)] += c * int(sg);
            }
        }
        out
    })
}

/// Random element with integer coordinates in `[-3, 3]`.
fn random_element(rng: &mut ChaCha8Rng, dim: usize) -> Element {
    Element::from_coords((0..dim).map(|_| int(rng.gen_range(-3..=3))).collect())
}

/// Jordan check on the degree-`n` Grassmann envelope: commutativity
/// exhaustively on basis pairs, and `(x²y)x = x²(yx)` on `trials` random
/// pairs drawn from a ChaCha8 stream seeded with `seed`.
pub fn check_envelope_jordan(
    a: &SuperAlgebra,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<IdentityReport> {
    if !(1..=4).contains(&n) {
        return Err(Error::InvalidArgument(format!("envelope degree {n} must be in 1..=4")));
    }
    let env = grassmann_envelope(a, n)?;
    let dim = env.dim();
    let mut comm = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let d = &env.mul(&env.basis(i), &env.basis(j)) - &env.mul(&env.basis(j), &env.basis(i));
            if !d.is_zero() {
                comm.push(Witness { indices: vec![i, j], defect: d });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<(Element, Element)> = (0..trials)
        .map(|_| (random_element(&mut rng, dim), random_element(&mut rng, dim)))
        .collect();
    let jordan: Vec<Witness> = samples
        .par_iter()
        .enumerate()
        .map(|(k, (x, y))| {
            let d = envelope_jordan_defect(&env, x, y);
            (!d.is_zero()).then(|| Witness { indices: vec![k], defect: d })
        })
        .collect::<Vec<Option<_>>>()
        .into_iter()
        .flatten()
        .collect();
    let mut report = IdentityReport::new("envelope-commutativity", comm, dim * (dim - 1) / 2)
        .merge(IdentityReport::new("envelope-jordan", jordan, trials))
        .renamed("envelope-jordan");
    report.notes.push(format!("degree {n}, {trials} trials, seed {seed}"));
    Ok(report)
}

/// `(x²y)x - x²(yx)`.
pub fn envelope_jordan_defect(env: &SuperAlgebra, x: &Element, y: &Element) -> Element {
    let xx = env.mul(x, x);
    &env.mul(&env.mul(&xx, y), x) - &env.mul(&xx, &env.mul(y, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::labels;
    use crate::catalog::*;

    /// One even unit `e` and one odd `u` with `u·u = e`.
    fn odd_square_unit() -> SuperAlgebra {
        SuperAlgebra::from_entries(
            "bad",
            1,
            1,
            labels(&["e", "u"]),
            &[(0, 0, 0, int(1)), (0, 1, 1, int(1)), (1, 0, 1, int(1)), (1, 1, 0, int(1))],
            false,
        )
        .unwrap()
    }

    #[test]
    fn supercommutativity_examples() {
        assert!(check_supercommutativity(&make_k10_table()).unwrap().passed());
        assert!(check_supercommutativity(&make_k3()).unwrap().passed());
        assert!(check_supercommutativity(&make_grassmann(2).unwrap()).unwrap().passed());
        let m2 = make_matrix_algebra(2);
        let r = check_supercommutativity(&m2).unwrap();
        assert!(!r.passed());
        let (e12, e21) = (m2.label_index("E12").unwrap(), m2.label_index("E21").unwrap());
        assert!(r.witnesses.iter().any(|w| w.indices == vec![e12, e21]));
    }

    #[test]
    fn ungraded_input_is_rejected() {
        let bad = SuperAlgebra::from_entries("u", 0, 1, labels(&["u"]), &[(0, 0, 0, int(1))], false)
            .unwrap();
        assert!(matches!(check_supercommutativity(&bad), Err(Error::Ungraded(1))));
        assert!(matches!(check_super_jordan(&bad), Err(Error::Ungraded(1))));
    }

    #[test]
    fn super_jordan_examples() {
        let k3 = make_k3();
        let e = k3.elem("e");
        assert!(super_jordan_defect(&k3, &e, &e, &e, &e).is_zero());
        assert!(check_super_jordan(&make_grassmann(3).unwrap()).unwrap().passed());
        assert!(check_super_jordan(&k3).unwrap().passed());
        assert!(matches!(
            check_super_jordan(&make_matrix_algebra(2)),
            Err(Error::NotSupercommutative(_))
        ));
    }

    #[test]
    fn jordan_even_examples() {
        let j = make_bilinear_jordan(&k10_v_gram()).unwrap();
        assert!(check_jordan(&j).unwrap().passed());
        assert!(check_jordan(&make_plus(&make_matrix_algebra(2)).unwrap()).unwrap().passed());
        let r = check_jordan(&make_matrix_algebra(2)).unwrap();
        assert!(!r.passed());
        assert!(matches!(check_jordan(&make_k3()), Err(Error::NotEven)));
    }

    #[test]
    fn envelope_dims_and_products() {
        let k3 = make_k3();
        let env = grassmann_envelope(&k3, 2).unwrap();
        assert_eq!(env.dim(), 6);
        let one_e = env.elem("1⊗e");
        assert_eq!(env.mul(&one_e, &one_e), one_e);
        let a = env.mul(&env.elem("g1⊗x"), &env.elem("g2⊗y"));
        let b = env.mul(&env.elem("g2⊗y"), &env.elem("g1⊗x"));
        assert_eq!(a, env.elem("g12⊗e"));
        assert_eq!(a, b);
        assert!(grassmann_envelope(&k3, 0).is_err());
    }

    #[test]
    fn envelope_detects_odd_square() {
        let bad = odd_square_unit();
        assert!(!check_supercommutativity(&bad).unwrap().passed());
        let r = check_envelope_jordan(&bad, 2, 20, 7).unwrap();
        assert!(!r.passed());
        assert!(check_envelope_jordan(&bad, 5, 1, 0).is_err());
    }

    #[test]
    fn envelope_zero_arguments_are_trivial() {
        let env = grassmann_envelope(&make_k3(), 2).unwrap();
        let x = env.parse_element("1⊗e + g1⊗x").unwrap();
        assert!(envelope_jordan_defect(&env, &env.zero(), &x).is_zero());
        assert!(envelope_jordan_defect(&env, &x, &env.zero()).is_zero());
    }

    #[test]
    fn envelope_is_deterministic() {
        let k3 = make_k3();
        let a = check_envelope_jordan(&k3, 3, 10, 5).unwrap();
        let b = check_envelope_jordan(&k3, 3, 10, 5).unwrap();
        assert!(a.passed());
        assert_eq!(a.witnesses, b.witnesses);
        assert_eq!(a.evaluated, b.evaluated);
    }

    #[test]
    fn witnesses_reproduce() {
        // Commutative but not Jordan: a·a = b, a·b = b·a = a, b·b = 0.
        let alg = SuperAlgebra::from_entries(
            "c",
            2,
            0,
            labels(&["a", "b"]),
            &[(0, 0, 1, int(1)), (0, 1, 0, int(1)), (1, 0, 0, int(1)), (1, 1, 0, int(0))],
            false,
        )
        .unwrap();
        let r = check_jordan(&alg).unwrap();
        assert!(!r.passed());
        for w in &r.witnesses {
            let b: Vec<Element> = w.indices.iter().map(|&i| alg.basis(i)).collect();
            assert_eq!(w.indices.len(), 4);
            assert_eq!(linearized_jordan_defect(&alg, &b[0], &b[1], &b[2], &b[3]), w.defect);
        }
    }
}
