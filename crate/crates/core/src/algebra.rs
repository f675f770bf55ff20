//! Finite-dimensional superalgebras given by structure constants.
//!
//! A [`SuperAlgebra`] has a basis split into an even block followed by an odd
//! block. The product of basis vectors `b_i * b_j` is stored as a sparse
//! coefficient list, one per ordered pair, and extended bilinearly.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::{format_scalar, parse_scalar, Matrix, Scalar};

pub type SparseVec = Vec<(usize, Scalar)>;

/// Coordinate vector over some algebra's basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element(Vec<Scalar>);

impl Element {
    pub fn zero(dim: usize) -> Self {
        Element(vec![Scalar::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.0[i] = Scalar::one();
        e
    }

    pub fn from_coords(coords: Vec<Scalar>) -> Self {
        Element(coords)
    }

    pub fn from_sparse(dim: usize, terms: &[(usize, Scalar)]) -> Self {
        let mut e = Self::zero(dim);
        for (k, c) in terms {
            e.0[*k] += c;
        }
        e
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element(self.0.iter().map(|x| x * c).collect())
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().enumerate().filter(|(_, x)| !x.is_zero())
    }
}

impl AsRef<[Scalar]> for Element {
    fn as_ref(&self) -> &[Scalar] {
        &self.0
    }
}

impl Add for &Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimension mismatch");
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimension mismatch");
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        Element(self.0.iter().map(|a| -a).collect())
    }
}

/// Parity of a basis vector: 0 for even, 1 for odd.
pub type Parity = u8;

/// A graded basis-pair `(i, j)` whose product has a coefficient `c` on a
/// basis vector `k` of the wrong parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coefficient: Scalar,
}

#[derive(Clone, Debug, Default)]
pub struct GradingReport {
    pub violations: Vec<GradingViolation>,
}

impl GradingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SuperAlgebra {
    name: String,
    dim_even: usize,
    dim_odd: usize,
    labels: Vec<String>,
    /// `products[i * dim + j]` is the sparse expansion of `b_i * b_j`.
    products: Vec<SparseVec>,
}

impl SuperAlgebra {
    /// Builds an algebra from a closure giving the full coordinate vector of
    /// each basis product.
    pub fn from_fn<F>(
        name: impl Into<String>,
        dim_even: usize,
        dim_odd: usize,
        labels: Vec<String>,
        mut product: F,
    ) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Vec<Scalar>,
    {
        let dim = dim_even + dim_odd;
        check_labels(&labels, dim)?;
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = product(i, j);
                if v.len() != dim {
                    return Err(Error::InvalidTable(format!(
                        "product ({i},{j}) has length {}, expected {dim}",
                        v.len()
                    )));
                }
                products.push(
                    v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect(),
                );
            }
        }
        Ok(SuperAlgebra { name: name.into(), dim_even, dim_odd, labels, products })
    }

    /// Builds an algebra from sparse `(i, j, k, c)` entries. Repeated entries
    /// accumulate. Unless `implicit_zero` is set, every ordered pair `(i, j)`
    /// must be mentioned by at least one entry.
    pub fn from_entries(
        name: impl Into<String>,
        dim_even: usize,
        dim_odd: usize,
        labels: Vec<String>,
        entries: &[(usize, usize, usize, Scalar)],
        implicit_zero: bool,
    ) -> Result<Self> {
        let dim = dim_even + dim_odd;
        check_labels(&labels, dim)?;
        let mut dense = vec![vec![Scalar::zero(); dim]; dim * dim];
        let mut seen = vec![false; dim * dim];
        for (i, j, k, c) in entries {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::InvalidTable(format!(
                    "entry ({i},{j},{k}) out of range for dimension {dim}"
                )));
            }
            dense[i * dim + j][*k] += c;
            seen[i * dim + j] = true;
        }
        if !implicit_zero {
            if let Some(p) = seen.iter().position(|s| !s) {
                return Err(Error::InvalidTable(format!(
                    "missing product for pair ({}, {})",
                    p / dim,
                    p % dim
                )));
            }
        }
        let products = dense
            .into_iter()
            .map(|v| v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        Ok(SuperAlgebra { name: name.into(), dim_even, dim_odd, labels, products })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim_even + self.dim_odd
    }

    pub fn dim_even(&self) -> usize {
        self.dim_even
    }

    pub fn dim_odd(&self) -> usize {
        self.dim_odd
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parity(&self, i: usize) -> Parity {
        u8::from(i >= self.dim_even)
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(self.dim(), i)
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.dim())
    }

    /// Index of a basis label. Matches exactly, or ignoring `⊗`.
    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label).or_else(|| {
            let strip = |s: &str| s.replace('⊗', "");
            let target = strip(label);
            self.labels.iter().position(|l| strip(l) == target)
        })
    }

    /// Element named by a single basis label.
    pub fn elem(&self, label: &str) -> Element {
        let i = self.label_index(label).unwrap_or_else(|| panic!("no basis label {label:?}"));
        self.basis(i)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim() + j]
    }

    fn check_elem(&self, x: &Element) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::MismatchedAlgebras(x.dim(), self.dim()));
        }
        Ok(())
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_elem(x)?;
        self.check_elem(y)?;
        Ok(self.mul(x, y))
    }

    /// Bilinear product. Panics if either element has the wrong dimension.
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        assert_eq!(x.dim(), self.dim(), "element dimension mismatch");
        assert_eq!(y.dim(), self.dim(), "element dimension mismatch");
        let mut out = vec![Scalar::zero(); self.dim()];
        for (i, a) in x.support() {
            for (j, b) in y.support() {
                let ab = a * b;
                for (k, c) in self.basis_product(i, j) {
                    out[*k] += &ab * c;
                }
            }
        }
        Element(out)
    }

    /// Verifies `A_a A_b ⊆ A_{a+b}` on every basis pair.
    pub fn check_grading(&self) -> GradingReport {
        let dim = self.dim();
        let mut violations = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let expected = (self.parity(i) + self.parity(j)) % 2;
                for (k, c) in self.basis_product(i, j) {
                    if self.parity(*k) != expected {
                        violations.push(GradingViolation { i, j, k: *k, coefficient: c.clone() });
                    }
                }
            }
        }
        GradingReport { violations }
    }

    /// Splits `x` into its even and odd components.
    pub fn parity_parts(&self, x: &Element) -> (Element, Element) {
        let mut even = x.clone();
        let mut odd = x.clone();
        for k in 0..self.dim() {
            if self.parity(k) == 0 {
                odd.0[k] = Scalar::zero();
            } else {
                even.0[k] = Scalar::zero();
            }
        }
        (even, odd)
    }

    /// `(xy)z - x(yz)`.
    pub fn associator(&self, x: &Element, y: &Element, z: &Element) -> Result<Element> {
        let xy = self.multiply(x, y)?;
        let yz = self.multiply(y, z)?;
        Ok(&self.mul(&xy, z) - &self.mul(x, &yz))
    }

    /// Homogeneous parity of `x`, or `None` if it mixes parities. Zero counts
    /// as even.
    pub fn homogeneous_parity(&self, x: &Element) -> Option<Parity> {
        let mut parity = None;
        for (k, _) in x.support() {
            match parity {
                None => parity = Some(self.parity(k)),
                Some(p) if p != self.parity(k) => return None,
                _ => {}
            }
        }
        Some(parity.unwrap_or(0))
    }

    /// Direct sum `A ⊕ B` with zero cross products. Labels are prefixed with
    /// the summand names; the even block of `A` precedes the even block of `B`.
    pub fn direct_sum(a: &SuperAlgebra, b: &SuperAlgebra) -> SuperAlgebra {
        // Combined index for each summand's basis vectors.
        let a_map: Vec<usize> = (0..a.dim())
            .map(|i| if i < a.dim_even { i } else { b.dim_even + i })
            .collect();
        let b_map: Vec<usize> = (0..b.dim())
            .map(|i| if i < b.dim_even { a.dim_even + i } else { a.dim() + i })
            .collect();
        let dim = a.dim() + b.dim();
        let mut labels = vec![String::new(); dim];
        for i in 0..a.dim() {
            labels[a_map[i]] = format!("{}.{}", a.name, a.labels[i]);
        }
        for i in 0..b.dim() {
            labels[b_map[i]] = format!("{}.{}", b.name, b.labels[i]);
        }
        let mut products = vec![Vec::new(); dim * dim];
        for (src, map) in [(a, &a_map), (b, &b_map)] {
            for i in 0..src.dim() {
                for j in 0..src.dim() {
                    let mut p: SparseVec = src
                        .basis_product(i, j)
                        .iter()
                        .map(|(k, c)| (map[*k], c.clone()))
                        .collect();
                    p.sort_by_key(|(k, _)| *k);
                    products[map[i] * dim + map[j]] = p;
                }
            }
        }
        SuperAlgebra {
            name: format!("{}+{}", a.name, b.name),
            dim_even: a.dim_even + b.dim_even,
            dim_odd: a.dim_odd + b.dim_odd,
            labels,
            products,
        }
    }

    /// Re-expresses the algebra in a new basis. Column `j` of `basis` holds the
    /// old coordinates of new basis vector `j`; the new basis must be
    /// homogeneous with the even vectors first.
    pub fn change_basis(&self, basis: &Matrix, labels: Vec<String>) -> Result<SuperAlgebra> {
        if basis.rows() != self.dim() || basis.cols() != self.dim() {
            return Err(Error::Dimension("change of basis must be square".into()));
        }
        let inv = basis.invert()?;
        let cols: Vec<Element> = (0..self.dim()).map(|j| Element(basis.column(j))).collect();
        let mut dim_even = 0;
        for (j, c) in cols.iter().enumerate() {
            match self.homogeneous_parity(c) {
                Some(0) if j == dim_even => dim_even += 1,
                Some(1) if j >= dim_even => {}
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "new basis vector {j} is not homogeneous in even-then-odd order"
                    )))
                }
            }
        }
        SuperAlgebra::from_fn(self.name.clone(), dim_even, self.dim() - dim_even, labels, |i, j| {
            inv.mul_vec(self.mul(&cols[i], &cols[j]).coords()).expect("square basis")
        })
    }

    /// Parses a linear combination of basis labels such as `a + 2*e - 6*f`,
    /// `p2+q2` or `1/2*p1`.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        let mut out = self.zero();
        if s == "0" {
            return Ok(out);
        }
        let chars: Vec<char> = s.chars().collect();
        let mut terms = Vec::new();
        let mut start = 0;
        for idx in 1..chars.len() {
            if (chars[idx] == '+' || chars[idx] == '-') && !matches!(chars[idx - 1], '*' | '/') {
                terms.push(chars[start..idx].iter().collect::<String>());
                start = idx;
            }
        }
        terms.push(chars[start..].iter().collect::<String>());
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-Scalar::one(), rest.to_string()),
                None => (Scalar::one(), term.trim_start_matches('+').to_string()),
            };
            let (coef, idx) = self.parse_term(&body)?;
            out.0[idx] += sign * coef;
        }
        Ok(out)
    }

    fn parse_term(&self, body: &str) -> Result<(Scalar, usize)> {
        if let Some(i) = self.label_index(body) {
            return Ok((Scalar::one(), i));
        }
        let chars: Vec<char> = body.chars().collect();
        for cut in (1..chars.len()).rev() {
            let prefix: String = chars[..cut].iter().collect();
            if !prefix.chars().all(|c| c.is_ascii_digit() || c == '/') {
                continue;
            }
            let Ok(coef) = parse_scalar(&prefix) else { continue };
            let rest: String = chars[cut..].iter().collect();
            let label = rest.strip_prefix('*').unwrap_or(&rest);
            if let Some(i) = self.label_index(label) {
                return Ok((coef, i));
            }
        }
        Err(Error::Parse(format!("cannot parse term {body:?} in algebra {}", self.name)))
    }

    /// Formats an element as a linear combination of labels, in the syntax
    /// accepted by [`SuperAlgebra::parse_element`].
    pub fn format_element(&self, x: &Element) -> String {
        let mut out = String::new();
        for (k, c) in x.support() {
            let neg = c < &Scalar::zero();
            let abs = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                out.push_str(&format_scalar(&abs));
                out.push('*');
            }
            out.push_str(&self.labels[k]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Sparse `(i, j, k, c)` listing of the nonzero structure constants.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let dim = self.dim();
        let mut out = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                for (k, c) in self.basis_product(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn to_file(&self) -> AlgebraFile {
        let dim = self.dim();
        let mut table = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let p = self.basis_product(i, j);
                if p.is_empty() {
                    table.push(TableEntry { i, j, k: 0, c: "0".into() });
                }
                for (k, c) in p {
                    table.push(TableEntry { i, j, k: *k, c: format_scalar(c) });
                }
            }
        }
        AlgebraFile {
            name: self.name.clone(),
            dim_even: self.dim_even,
            dim_odd: self.dim_odd,
            basis: self.labels.clone(),
            table,
            implicit_zero_rows: None,
        }
    }

    pub fn from_file(file: &AlgebraFile) -> Result<Self> {
        let entries: Vec<(usize, usize, usize, Scalar)> = file
            .table
            .iter()
            .map(|e| Ok((e.i, e.j, e.k, parse_scalar(&e.c)?)))
            .collect::<Result<_>>()?;
        SuperAlgebra::from_entries(
            file.name.clone(),
            file.dim_even,
            file.dim_odd,
            file.basis.clone(),
            &entries,
            file.implicit_zero_rows.unwrap_or(false),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("algebra file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?)
    }
}

fn check_labels(labels: &[String], dim: usize) -> Result<()> {
    if labels.len() != dim {
        return Err(Error::InvalidTable(format!(
            "{} basis labels for dimension {dim}",
            labels.len()
        )));
    }
    Ok(())
}

impl fmt::Debug for SuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperAlgebra({}, {}|{})", self.name, self.dim_even, self.dim_odd)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TableEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

/// On-disk JSON form of a [`SuperAlgebra`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraFile {
    pub name: String,
    pub dim_even: usize,
    pub dim_odd: usize,
    pub basis: Vec<String>,
    pub table: Vec<TableEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub implicit_zero_rows: Option<bool>,
}

pub fn labels<S: AsRef<str>>(names: &[S]) -> Vec<String> {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_k10_table, make_k3};
    use crate::linear::{frac, int};

    #[test]
    fn multiply_table_entries() {
        let k10 = make_k10_table();
        let p = k10.mul(&k10.elem("p1"), &k10.elem("p2"));
        assert_eq!(p, k10.parse_element("a + 2*e - 6*f").unwrap());
        assert!(k10.mul(&k10.elem("e"), &k10.elem("f")).is_zero());
        let k3 = make_k3();
        assert!(k3.mul(&k3.elem("x"), &k3.elem("x")).is_zero());
    }

    #[test]
    fn multiply_rejects_foreign_elements() {
        let k10 = make_k10_table();
        let k3 = make_k3();
        assert!(matches!(
            k10.multiply(&k10.elem("e"), &k3.elem("e")),
            Err(Error::MismatchedAlgebras(3, 10))
        ));
    }

    #[test]
    fn grading_checks() {
        assert!(make_k10_table().check_grading().passed());
        let bad = SuperAlgebra::from_entries(
            "bad",
            0,
            1,
            labels(&["u"]),
            &[(0, 0, 0, int(1))],
            false,
        )
        .unwrap();
        let report = bad.check_grading();
        assert_eq!(report.violations.len(), 1);
        assert_eq!((report.violations[0].i, report.violations[0].j, report.violations[0].k), (0, 0, 0));
        let zero = SuperAlgebra::from_entries("z", 1, 0, labels(&["z"]), &[], true).unwrap();
        assert!(zero.check_grading().passed());
    }

    #[test]
    fn missing_pairs_are_rejected() {
        let err = SuperAlgebra::from_entries("x", 2, 0, labels(&["a", "b"]), &[(0, 0, 0, int(1))], false);
        assert!(matches!(err, Err(Error::InvalidTable(_))));
    }

    #[test]
    fn parity_parts_split() {
        let k10 = make_k10_table();
        let x = k10.parse_element("e + p1").unwrap();
        assert_eq!(k10.parity_parts(&x), (k10.elem("e"), k10.elem("p1")));
        let (e, o) = k10.parity_parts(&k10.zero());
        assert!(e.is_zero() && o.is_zero());
        let x = k10.parse_element("a + b + q2").unwrap();
        assert_eq!(k10.parity_parts(&x), (k10.parse_element("a+b").unwrap(), k10.elem("q2")));
    }

    #[test]
    fn associator_of_a_a_b() {
        let k10 = make_k10_table();
        let (a, b) = (k10.elem("a"), k10.elem("b"));
        assert_eq!(k10.associator(&a, &a, &b).unwrap(), b.scale(&int(4)));
        let k3 = make_k3();
        let e = k3.elem("e");
        assert!(k3.associator(&e, &e, &e).unwrap().is_zero());
    }

    #[test]
    fn direct_sum_with_trivial_summand() {
        let k3 = make_k3();
        let empty = SuperAlgebra::from_entries("0", 0, 0, vec![], &[], true).unwrap();
        let s = SuperAlgebra::direct_sum(&k3, &empty);
        assert_eq!(s.entries(), k3.entries());
        assert_eq!((s.dim_even(), s.dim_odd()), (1, 2));
    }

    #[test]
    fn parse_and_format_roundtrip() {
        let k10 = make_k10_table();
        let x = k10.parse_element("1/2*p1 - 3f + 2e").unwrap();
        assert_eq!(x.coords()[6], frac(1, 2));
        assert_eq!(x.coords()[5], int(-3));
        assert_eq!(k10.parse_element(&k10.format_element(&x)).unwrap(), x);
        assert!(k10.parse_element("zz").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let k10 = make_k10_table();
        let back = SuperAlgebra::from_json(&k10.to_json()).unwrap();
        assert_eq!(back, k10);
    }
}
