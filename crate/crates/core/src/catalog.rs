//! Constructors for every algebra the crate works with. `K10` comes in two
//! forms, the multiplication table and `F1 ⊕ (K3 ⊗ K3)`.

use num_traits::{One, Zero};

use crate::algebra::{labels, Element, SuperAlgebra};
use crate::error::{Error, Result};
use crate::linear::{frac, int, Matrix, Scalar};
use crate::subalgebra::{is_ideal, GradedSubspace};

/// Basis labels of `K10` in table order: even block `e, a, b, c1, c2, f`,
/// odd block `p1, p2, q1, q2`.
pub const K10_LABELS: [&str; 10] = ["e", "a", "b", "c1", "c2", "f", "p1", "p2", "q1", "q2"];

/// Basis labels of the tensor model: even block `1, e⊗e, x⊗x, x⊗y, y⊗x, y⊗y`,
/// odd block `e⊗x, e⊗y, x⊗e, y⊗e`.
pub const K10_TENSOR_LABELS: [&str; 10] =
    ["1", "e⊗e", "x⊗x", "x⊗y", "y⊗x", "y⊗y", "e⊗x", "e⊗y", "x⊗e", "y⊗e"];

#[rustfmt::skip]
const K10_TABLE: [[&str; 10]; 10] = [
    // e        a       b       c1      c2      f         p1            p2            q1           q2
    ["e",      "a",    "b",    "c1",   "c2",   "0",      "1/2*p1",     "1/2*p2",     "1/2*q1",    "1/2*q2"],
    ["a",      "4e",   "0",    "0",    "0",    "0",      "p1",         "p2",         "-q1",       "-q2"],
    ["b",      "0",    "-4e",  "0",    "0",    "0",      "q1",         "q2",         "-p1",       "-p2"],
    ["c1",     "0",    "0",    "0",    "2e",   "0",      "0",          "q1",         "0",         "p1"],
    ["c2",     "0",    "0",    "2e",   "0",    "0",      "q2",         "0",          "p2",        "0"],
    ["0",      "0",    "0",    "0",    "0",    "f",      "1/2*p1",     "1/2*p2",     "1/2*q1",    "1/2*q2"],
    ["1/2*p1", "p1",   "q1",   "0",    "q2",   "1/2*p1", "0",          "a+2e-6f",    "2c1",       "b"],
    ["1/2*p2", "p2",   "q2",   "q1",   "0",    "1/2*p2", "-a-2e+6f",   "0",          "-b",        "-2c2"],
    ["1/2*q1", "-q1",  "-p1",  "0",    "p2",   "1/2*q1", "-2c1",       "b",          "0",         "a-2e+6f"],
    ["1/2*q2", "-q2",  "-p2",  "p1",   "0",    "1/2*q2", "-b",         "2c2",        "-a+2e-6f",  "0"],
];

/// Nondegenerate supersymmetric bilinear form: symmetric on the even part,
/// skew-symmetric on the odd part, the two parts orthogonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperForm {
    even_gram: Matrix,
    odd_gram: Matrix,
}

impl SuperForm {
    pub fn new(even_gram: Matrix, odd_gram: Matrix) -> Result<Self> {
        if !even_gram.is_square() || even_gram != even_gram.transpose() {
            return Err(Error::InvalidArgument("even Gram matrix must be symmetric".into()));
        }
        if !odd_gram.is_square() || odd_gram != -&odd_gram.transpose() {
            return Err(Error::InvalidArgument("odd Gram matrix must be skew-symmetric".into()));
        }
        if even_gram.det()?.is_zero() || odd_gram.det()?.is_zero() {
            return Err(Error::InvalidArgument("superform is degenerate".into()));
        }
        Ok(SuperForm { even_gram, odd_gram })
    }

    pub fn even_gram(&self) -> &Matrix {
        &self.even_gram
    }

    pub fn odd_gram(&self) -> &Matrix {
        &self.odd_gram
    }
}

/// Kaplansky superalgebra on `(e | x, y)`.
pub fn make_k3() -> SuperAlgebra {
    let t = [
        ["e", "1/2*x", "1/2*y"],
        ["1/2*x", "0", "e"],
        ["1/2*y", "-e", "0"],
    ];
    from_grid("K3", 1, 2, &["e", "x", "y"], &t)
}

/// The invariant form on `K3`: `(e|e) = 1/2`, `(x|y) = 1 = -(y|x)`.
pub fn k3_form() -> Matrix {
    let mut m = Matrix::zeros(3, 3);
    m.set(0, 0, frac(1, 2));
    m.set(1, 2, int(1));
    m.set(2, 1, int(-1));
    m
}

/// `D_t` on `(e, f | u, v)` with `u·v = e + t f`.
pub fn make_dt(t: &Scalar) -> Result<SuperAlgebra> {
    if t.is_zero() {
        return Err(Error::InvalidArgument("D_t requires t != 0".into()));
    }
    let half = frac(1, 2);
    SuperAlgebra::from_fn(format!("D({t})"), 2, 2, labels(&["e", "f", "u", "v"]), |i, j| {
        let mut out = vec![Scalar::zero(); 4];
        match (i, j) {
            (0, 0) => out[0] = Scalar::one(),
            (1, 1) => out[1] = Scalar::one(),
            (0 | 1, 2 | 3) => out[j] = half.clone(),
            (2 | 3, 0 | 1) => out[i] = half.clone(),
            (2, 3) => {
                out[0] = Scalar::one();
                out[1] = t.clone();
            }
            (3, 2) => {
                out[0] = -Scalar::one();
                out[1] = -t.clone();
            }
            _ => {}
        }
        out
    })
}

/// `K10` with the products of the standard multiplication table.
pub fn make_k10_table() -> SuperAlgebra {
    from_grid("K10", 6, 4, &K10_LABELS, &K10_TABLE)
}

/// The quadratic form `Q` on `V = span{a, b, c1, c2}` read off the table:
/// `v·w = Q(v, w) e` for `v, w ∈ V`.
pub fn k10_v_gram() -> Matrix {
    Matrix::from_i64(&[&[4, 0, 0, 0], &[0, -4, 0, 0], &[0, 0, 0, 2], &[0, 0, 2, 0]])
}

/// Jordan algebra `F1 + V` of a symmetric nondegenerate bilinear form, with
/// basis labels `1, v1, .., vn`.
pub fn make_bilinear_jordan(gram: &Matrix) -> Result<SuperAlgebra> {
    let n = gram.rows();
    let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    make_bilinear_jordan_labeled(gram, "1", &names)
}

pub fn make_bilinear_jordan_labeled(
    gram: &Matrix,
    unit: &str,
    vectors: &[String],
) -> Result<SuperAlgebra> {
    if !gram.is_square() || gram != &gram.transpose() {
        return Err(Error::InvalidArgument("Gram matrix must be symmetric".into()));
    }
    if gram.det()?.is_zero() {
        return Err(Error::InvalidArgument("bilinear form is degenerate".into()));
    }
    let n = gram.rows();
    if vectors.len() != n {
        return Err(Error::InvalidArgument("one label per vector required".into()));
    }
    let mut names = vec![unit.to_string()];
    names.extend(vectors.iter().cloned());
    SuperAlgebra::from_fn("J(V,Q)", n + 1, 0, names, |i, j| {
        let mut out = vec![Scalar::zero(); n + 1];
        match (i, j) {
            (0, k) | (k, 0) => out[k] = Scalar::one(),
            (i, j) => out[0] = gram.get(i - 1, j - 1).clone(),
        }
        out
    })
}

/// Superalgebra of a superform: `J_0 = Fe + V_0`, `J_1 = V_1`, `e` the unit and
/// `v·w = (v, w) e`.
pub fn make_superform_algebra(form: &SuperForm) -> SuperAlgebra {
    let n = form.even_gram.rows();
    let m = form.odd_gram.rows();
    let mut names = vec!["e".to_string()];
    names.extend((1..=n).map(|i| format!("v{i}")));
    names.extend((1..=m).map(|i| format!("w{i}")));
    let dim = 1 + n + m;
    SuperAlgebra::from_fn("superform", 1 + n, m, names, |i, j| {
        let mut out = vec![Scalar::zero(); dim];
        if i == 0 {
            out[j] = Scalar::one();
        } else if j == 0 {
            out[i] = Scalar::one();
        } else if i <= n && j <= n {
            out[0] = form.even_gram.get(i - 1, j - 1).clone();
        } else if i > n && j > n {
            out[0] = form.odd_gram.get(i - 1 - n, j - 1 - n).clone();
        }
        out
    })
    .expect("superform table is well formed")
}

/// `A^+`: same graded space, product `½(xy + (-1)^{x̄ȳ} yx)` on homogeneous
/// elements. The input must be associative on all basis triples.
pub fn make_plus(assoc: &SuperAlgebra) -> Result<SuperAlgebra> {
    let dim = assoc.dim();
    for i in 0..dim {
        for j in 0..dim {
            let ij = Element::from_sparse(dim, assoc.basis_product(i, j));
            for k in 0..dim {
                let jk = Element::from_sparse(dim, assoc.basis_product(j, k));
                let left = assoc.mul(&ij, &assoc.basis(k));
                let right = assoc.mul(&assoc.basis(i), &jk);
                if left != right {
                    return Err(Error::NotAssociative((i, j, k)));
                }
            }
        }
    }
    let half = frac(1, 2);
    SuperAlgebra::from_fn(
        format!("{}+", assoc.name()),
        assoc.dim_even(),
        assoc.dim_odd(),
        assoc.labels().to_vec(),
        |i, j| {
            let ij = Element::from_sparse(dim, assoc.basis_product(i, j));
            let ji = Element::from_sparse(dim, assoc.basis_product(j, i));
            let sum = if assoc.parity(i) * assoc.parity(j) == 1 { &ij - &ji } else { &ij + &ji };
            sum.scale(&half).into_coords()
        },
    )
}

/// Full matrix algebra `M_n(F)`, purely even, on matrix units `E_ij`.
pub fn make_matrix_algebra(n: usize) -> SuperAlgebra {
    let names: Vec<String> =
        (0..n * n).map(|k| format!("E{}{}", k / n + 1, k % n + 1)).collect();
    SuperAlgebra::from_fn(format!("M{n}"), n * n, 0, names, |a, b| {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        let mut out = vec![Scalar::zero(); n * n];
        if j == k {
            out[i * n + l] = Scalar::one();
        }
        out
    })
    .expect("matrix units table is well formed")
}

/// The one-dimensional algebra `F` spanned by an idempotent.
pub fn make_field(label: &str) -> SuperAlgebra {
    SuperAlgebra::from_fn("F", 1, 0, vec![label.to_string()], |_, _| vec![Scalar::one()])
        .expect("1x1 table")
}

/// Grassmann algebra on `n` generators: `2^n` monomials indexed by subsets,
/// even subsets first, each block in increasing bitmask order.
pub fn make_grassmann(n: usize) -> Result<SuperAlgebra> {
    if n > 8 {
        return Err(Error::InvalidArgument(format!("grassmann degree {n} exceeds 8")));
    }
    let masks = grassmann_masks(n);
    let index = |m: u32| masks.iter().position(|&x| x == m).unwrap();
    let dim_even = masks.iter().filter(|m| m.count_ones() % 2 == 0).count();
    let names: Vec<String> = masks.iter().map(|&m| monomial_label(m)).collect();
    SuperAlgebra::from_fn(format!("G{n}"), dim_even, masks.len() - dim_even, names, |i, j| {
        let mut out = vec![Scalar::zero(); masks.len()];
        if let Some(sign) = monomial_sign(masks[i], masks[j]) {
            out[index(masks[i] | masks[j])] = int(sign);
        }
        out
    })
}

/// Subset bitmasks of `{1..n}` in Grassmann basis order.
pub fn grassmann_masks(n: usize) -> Vec<u32> {
    let all: Vec<u32> = (0..1u32 << n).collect();
    let mut masks: Vec<u32> = all.iter().copied().filter(|m| m.count_ones() % 2 == 0).collect();
    masks.extend(all.iter().copied().filter(|m| m.count_ones() % 2 == 1));
    masks
}

pub fn monomial_label(mask: u32) -> String {
    if mask == 0 {
        return "1".into();
    }
    let digits: String =
        (0..32).filter(|b| mask & (1 << b) != 0).map(|b| (b + 1).to_string()).collect();
    format!("g{digits}")
}

/// Sign of `g_S g_T = ± g_{S∪T}`, or `None` when the subsets meet.
pub fn monomial_sign(s: u32, t: u32) -> Option<i64> {
    if s & t != 0 {
        return None;
    }
    // Each generator of T moves left past the generators of S above it.
    let swaps: u32 = (0..32).filter(|b| t & (1 << b) != 0).map(|b| (s >> (b + 1)).count_ones()).sum();
    Some(if swaps.is_multiple_of(2) { 1 } else { -1 })
}

/// `K10` realized as `F·1 ⊕ (K3 ⊗ K3)` with
/// `(a⊗b)(c⊗d) = (-1)^{b̄c̄}(ac ⊗ bd - ¾ (a|c)(b|d) 1)` and `1` a formal unit.
pub fn make_k10_tensor() -> SuperAlgebra {
    let k3 = make_k3();
    let form = k3_form();
    let three_quarters = frac(3, 4);
    SuperAlgebra::from_fn("K10-tensor", 6, 4, labels(&K10_TENSOR_LABELS), |i, j| {
        let mut out = vec![Scalar::zero(); 10];
        if i == 0 {
            out[j] = Scalar::one();
            return out;
        }
        if j == 0 {
            out[i] = Scalar::one();
            return out;
        }
        let (a, b) = tensor_factors(i);
        let (c, d) = tensor_factors(j);
        let sign = if k3.parity(b) * k3.parity(c) == 1 { -Scalar::one() } else { Scalar::one() };
        for (k, x) in k3.basis_product(a, c) {
            for (l, y) in k3.basis_product(b, d) {
                out[tensor_index(*k, *l)] += &sign * x * y;
            }
        }
        let pairing = form.get(a, c) * form.get(b, d);
        out[0] -= &sign * &three_quarters * pairing;
        out
    })
    .expect("tensor table is well formed")
}

/// Tensor-model index of `k3[k] ⊗ k3[l]` (K3 order `e, x, y`).
pub fn tensor_index(k: usize, l: usize) -> usize {
    const INDEX: [[usize; 3]; 3] = [[1, 6, 7], [8, 2, 3], [9, 4, 5]];
    INDEX[k][l]
}

/// Inverse of [`tensor_index`] on indices `1..10`.
pub fn tensor_factors(i: usize) -> (usize, usize) {
    const FACTORS: [(usize, usize); 10] =
        [(0, 0), (0, 0), (1, 1), (1, 2), (2, 1), (2, 2), (0, 1), (0, 2), (1, 0), (2, 0)];
    assert!((1..10).contains(&i), "index {i} is not a tensor");
    FACTORS[i]
}

/// King decomposition of the even part of `K10`: the ideals `I = span{f}` and
/// `J = span{e, a, b, c1, c2}` of `(K10)_0`, verified to be ideals with
/// `I·J = 0`.
pub fn king_decomposition(k10: &SuperAlgebra) -> Result<(GradedSubspace, GradedSubspace)> {
    if k10 != &make_k10_table() {
        return Err(Error::Precondition("king_decomposition expects the K10 table".into()));
    }
    let ideal_i = GradedSubspace::spanned(k10, &[k10.elem("f")])?;
    let ideal_j = GradedSubspace::spanned(
        k10,
        &["e", "a", "b", "c1", "c2"].map(|l| k10.elem(l)),
    )?;
    let even = GradedSubspace::even_part(k10);
    for (name, ideal) in [("span{f}", &ideal_i), ("span{e,a,b,c1,c2}", &ideal_j)] {
        if !is_ideal(k10, ideal, &even)? {
            return Err(Error::Verification(format!("{name} is not an ideal of (K10)_0")));
        }
    }
    for x in ideal_i.elements(k10) {
        for y in ideal_j.elements(k10) {
            if !k10.mul(&x, &y).is_zero() || !k10.mul(&y, &x).is_zero() {
                return Err(Error::Verification("I·J is not zero".into()));
            }
        }
    }
    if ideal_i.sum(&ideal_j)? != even {
        return Err(Error::Verification("I + J is not (K10)_0".into()));
    }
    Ok((ideal_i, ideal_j))
}

fn from_grid<'a, R: AsRef<[&'a str]>>(
    name: &str,
    dim_even: usize,
    dim_odd: usize,
    names: &[&str],
    grid: &[R],
) -> SuperAlgebra {
    let shell = SuperAlgebra::from_entries(name, dim_even, dim_odd, labels(names), &[], true)
        .expect("label shell");
    SuperAlgebra::from_fn(name, dim_even, dim_odd, labels(names), |i, j| {
        let cell = grid[i].as_ref()[j];
        shell.parse_element(cell).unwrap_or_else(|e| panic!("bad table cell {cell:?}: {e}")).into_coords()
    })
    .expect("grid table is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_products() {
        let k3 = make_k3();
        let p = |a: &str, b: &str| k3.mul(&k3.elem(a), &k3.elem(b));
        assert_eq!(p("e", "x"), k3.elem("x").scale(&frac(1, 2)));
        assert_eq!(p("x", "y"), k3.elem("e"));
        assert_eq!(p("y", "x"), -&k3.elem("e"));
    }

    #[test]
    fn dt_products() {
        let d = make_dt(&int(-3)).unwrap();
        let p = |a: &str, b: &str| d.mul(&d.elem(a), &d.elem(b));
        assert_eq!(p("u", "v"), d.parse_element("e - 3f").unwrap());
        assert_eq!(p("v", "u"), d.parse_element("-e + 3f").unwrap());
        assert!(p("e", "f").is_zero());
        assert!(p("u", "u").is_zero());
        let d = make_dt(&frac(-3, 2)).unwrap();
        assert_eq!(d.mul(&d.elem("u"), &d.elem("v")), d.parse_element("e - 3/2*f").unwrap());
        assert!(make_dt(&int(0)).is_err());
    }

    #[test]
    fn k10_table_entries() {
        let k = make_k10_table();
        let p = |a: &str, b: &str| k.mul(&k.elem(a), &k.elem(b));
        assert_eq!(p("q1", "q2"), k.parse_element("a - 2e + 6f").unwrap());
        assert_eq!(p("c1", "c2"), k.elem("e").scale(&int(2)));
        assert!(p("f", "e").is_zero());
        assert_eq!(p("p2", "c1"), k.elem("q1"));
    }

    #[test]
    fn bilinear_jordan_matches_table_even_block() {
        let names = labels(&["a", "b", "c1", "c2"]);
        let j = make_bilinear_jordan_labeled(&k10_v_gram(), "e", &names).unwrap();
        let k = make_k10_table();
        for x in ["e", "a", "b", "c1", "c2"] {
            for y in ["e", "a", "b", "c1", "c2"] {
                let in_j = j.format_element(&j.mul(&j.elem(x), &j.elem(y)));
                let in_k = k.format_element(&k.mul(&k.elem(x), &k.elem(y)));
                assert_eq!(in_j, in_k, "{x}·{y}");
            }
        }
        let bad = Matrix::from_i64(&[&[1, 2], &[0, 1]]);
        assert!(make_bilinear_jordan(&bad).is_err());
        assert!(make_bilinear_jordan(&Matrix::from_i64(&[&[1, 1], &[1, 1]])).is_err());
    }

    #[test]
    fn superform_products() {
        let form = SuperForm::new(
            Matrix::from_i64(&[&[1, 0], &[0, 1]]),
            Matrix::from_i64(&[&[0, 1], &[-1, 0]]),
        )
        .unwrap();
        let j = make_superform_algebra(&form);
        let p = |a: &str, b: &str| j.mul(&j.elem(a), &j.elem(b));
        assert_eq!(p("e", "e"), j.elem("e"));
        assert_eq!(p("w1", "w2"), j.elem("e"));
        assert_eq!(p("w2", "w1"), -&j.elem("e"));
        assert!(p("v1", "v2").is_zero());
        assert!(p("v1", "w1").is_zero());
        assert!(SuperForm::new(Matrix::identity(1), Matrix::identity(2)).is_err());
        assert!(SuperForm::new(Matrix::zeros(1, 1), Matrix::zeros(0, 0)).is_err());
    }

    #[test]
    fn plus_of_matrices() {
        let m2 = make_matrix_algebra(2);
        let j = make_plus(&m2).unwrap();
        let p = |a: &str, b: &str| j.mul(&j.elem(a), &j.elem(b));
        assert!(p("E11", "E22").is_zero());
        assert_eq!(p("E12", "E21"), j.parse_element("1/2*E11 + 1/2*E22").unwrap());
        let g = make_grassmann(2).unwrap();
        let gplus = make_plus(&g).unwrap();
        // Supercommutative associative input is unchanged.
        assert_eq!(gplus.entries(), g.entries());
        assert!(matches!(make_plus(&make_k10_table()), Err(Error::NotAssociative(_))));
    }

    #[test]
    fn grassmann_products() {
        let g = make_grassmann(2).unwrap();
        let p = |a: &str, b: &str| g.mul(&g.elem(a), &g.elem(b));
        assert_eq!(p("g1", "g2"), g.elem("g12"));
        assert_eq!(p("g2", "g1"), -&g.elem("g12"));
        assert!(p("g1", "g1").is_zero());
        for l in g.labels().to_vec() {
            assert_eq!(p("1", &l), g.elem(&l));
            assert_eq!(p(&l, "1"), g.elem(&l));
        }
        assert_eq!(make_grassmann(0).unwrap().dim(), 1);
        assert!(make_grassmann(9).is_err());
    }

    #[test]
    fn tensor_model_products() {
        let t = make_k10_tensor();
        let p = |a: &str, b: &str| t.mul(&t.elem(a), &t.elem(b));
        assert_eq!(p("e⊗e", "e⊗e"), t.parse_element("e⊗e - 3/16*1").unwrap());
        assert_eq!(p("x⊗e", "y⊗e"), t.parse_element("e⊗e - 3/8*1").unwrap());
        for l in K10_TENSOR_LABELS {
            assert_eq!(p("1", l), t.elem(l));
            assert_eq!(p(l, "1"), t.elem(l));
        }
    }

    #[test]
    fn king_decomposition_dims() {
        let k = make_k10_table();
        let (i, j) = king_decomposition(&k).unwrap();
        assert_eq!((i.dim(), j.dim()), (1, 5));
        let e = k.elem("e");
        for x in j.elements(&k) {
            assert_eq!(k.mul(&e, &x), x);
            assert!(k.mul(&k.elem("f"), &x).is_zero());
        }
        assert!(king_decomposition(&make_k10_tensor()).is_err());
    }
}
