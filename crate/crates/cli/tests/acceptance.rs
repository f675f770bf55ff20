//! Acceptance criteria 1-11. Each test writes one `criterion N: PASS|FAIL`
//! line straight to stderr (bypassing the harness capture) and then asserts.
//! All comparisons are exact.

use std::io::Write;
use std::process::Command;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use jord_core::algebra::Element;
use jord_core::catalog::{
    k10_v_gram, king_decomposition, make_bilinear_jordan, make_dt, make_k10_table,
    make_k10_tensor, make_k3, make_matrix_algebra, make_plus, make_superform_algebra, SuperForm,
};
use jord_core::fixtures::make_broken_k10;
use jord_core::identities::{check_envelope_jordan, check_super_jordan, check_supercommutativity};
use jord_core::linear::{frac, int};
use jord_core::morphism::{
    table_tensor_iso, factor_orthogonal, grading_automorphism, lift_orthogonal_to_aut, phi,
    psi, psi_tilde, swap_automorphism, wreath_compose, OrthogonalMap, WreathElement,
};
use jord_core::subalgebra::{
    conjugation_witness, dt_parameter, dt_parameter_of, fixed_subalgebra, is_ideal, is_solvable,
    is_subalgebra, maximal_subalgebra, maximality_probe, quotient,
    structure_report, DtInvariant, GradedSubspace, MaximalKind, ProbeVerdict,
};
use jord_core::{Matrix, SuperAlgebra};

fn report(n: usize, what: &str, ok: bool, detail: &str) {
    let line = format!("criterion {n:>2}: {} {what} ({detail})\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(ok, "criterion {n} failed: {what}: {detail}");
}

fn span(a: &SuperAlgebra, elems: &[&str]) -> GradedSubspace {
    let v: Vec<Element> = elems.iter().map(|s| a.parse_element(s).unwrap()).collect();
    GradedSubspace::spanned(a, &v).unwrap()
}

fn three_checks(a: &SuperAlgebra) -> (bool, usize, usize) {
    let g = a.check_grading();
    let c = check_supercommutativity(a).unwrap();
    let j = check_super_jordan(a).unwrap();
    (g.passed() && c.passed() && j.passed(), c.evaluated, j.evaluated)
}

#[test]
fn criterion_01_k10_axioms() {
    let (ok, pairs, quads) = three_checks(&make_k10_table());
    let ok = ok && pairs == 100 && quads == 10_000;
    report(1, "K10 table axioms", ok, &format!("{pairs} pairs, {quads} quadruples, zero defects"));
}

#[test]
fn criterion_02_tensor_model() {
    let t = make_k10_tensor();
    let (ok, pairs, quads) = three_checks(&t);
    let one = t.elem("1");
    let unit = (0..10).all(|i| t.mul(&one, &t.basis(i)) == t.basis(i) && t.mul(&t.basis(i), &one) == t.basis(i));
    report(2, "tensor model axioms and unit", ok && unit && pairs == 100 && quads == 10_000, "unit checked on all basis vectors");
}

#[test]
fn criterion_03_isomorphism() {
    let iso = table_tensor_iso().unwrap();
    let hom = iso.is_homomorphism();
    let inv = iso.matrix().invert().unwrap();
    let roundtrip = &inv * iso.matrix() == Matrix::identity(10);
    let s = iso.source().clone();
    let t = iso.target().clone();
    let images = iso.apply(&s.elem("e")) == t.parse_element("3/2*1 - 2*e⊗e").unwrap()
        && iso.apply(&s.elem("c2")) == t.parse_element("-2*y⊗x").unwrap()
        && iso.apply(&s.parse_element("e + f").unwrap()) == t.elem("1");
    report(
        3,
        "table-to-tensor isomorphism",
        hom.passed() && hom.evaluated == 100 && roundtrip && images,
        "100 pairs multiplicative, exact inverse",
    );
}

#[test]
fn criterion_04_catalog() {
    let mut algebras = vec![make_k3()];
    for t in [int(-3), int(-6), int(1), int(2), frac(-3, 2)] {
        algebras.push(make_dt(&t).unwrap());
    }
    let form = SuperForm::new(Matrix::identity(2), Matrix::from_i64(&[&[0, 1], &[-1, 0]])).unwrap();
    algebras.push(make_superform_algebra(&form));
    algebras.push(make_bilinear_jordan(&k10_v_gram()).unwrap());
    algebras.push(make_plus(&make_matrix_algebra(2)).unwrap());
    let failing: Vec<String> =
        algebras.iter().filter(|a| !three_checks(a).0).map(|a| a.name().to_string()).collect();
    report(4, "catalog axioms", failing.is_empty(), &format!("{} algebras, failing: {failing:?}", algebras.len()));
}

#[test]
fn criterion_05_envelope() {
    let env = check_envelope_jordan(&make_k10_table(), 3, 200, 1).unwrap();
    let broken = make_broken_k10();
    let direct = check_super_jordan(&broken).unwrap();
    let env_broken = check_envelope_jordan(&broken, 3, 200, 1).unwrap();
    report(
        5,
        "envelope cross-check",
        env.passed() && !direct.passed() && !env_broken.passed(),
        &format!(
            "K10 envelope clean; broken table: {} direct and {} envelope defects",
            direct.witnesses.len(),
            env_broken.witnesses.len()
        ),
    );
}

fn wreaths(seed: u64, n: usize) -> Vec<WreathElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| WreathElement::random(&mut rng, 5)).collect()
}

#[test]
fn criterion_06_wreath_identities() {
    let ws = wreaths(6, 40);
    let delta = swap_automorphism().unwrap();
    let tau = grading_automorphism(Arc::new(make_k10_tensor()));
    let mut ok = true;
    for w in &ws[..20] {
        ok &= psi(&phi(w)).unwrap() == psi_tilde(w);
        let fg = WreathElement::new(w.f().clone(), w.g().clone(), false).unwrap();
        let gf = WreathElement::new(w.g().clone(), w.f().clone(), false).unwrap();
        ok &= delta.compose(&phi(&fg)).unwrap().compose(&delta).unwrap() == phi(&gf);
    }
    for pair in ws.chunks(2) {
        ok &= phi(&wreath_compose(&pair[0], &pair[1])) == phi(&pair[0]).compose(&phi(&pair[1])).unwrap();
    }
    let m = WreathElement::minus_identity();
    ok &= phi(&m) == tau;
    ok &= psi_tilde(&m) == OrthogonalMap::identity();
    ok &= psi(&tau).unwrap() == OrthogonalMap::identity();
    report(6, "wreath product identities", ok, "20 elements and 20 pairs, height <= 5");
}

#[test]
fn criterion_07_factorization() {
    let mut ok = true;
    for w in wreaths(7, 20) {
        let m = psi_tilde(&w);
        ok &= factor_orthogonal(&m).unwrap().eq_up_to_sign(&w);
        ok &= psi(&lift_orthogonal_to_aut(&m).unwrap()).unwrap() == m;
    }
    report(7, "constructive surjectivity of Psi~", ok, "20 round trips");
}

#[test]
fn criterion_08_maximal_subalgebras() {
    let k10 = make_k10_table();
    let unit = k10.parse_element("e + f").unwrap();
    let mut ok = true;
    let mut dims = Vec::new();
    for (i, kind) in MaximalKind::ALL.into_iter().enumerate() {
        let b = maximal_subalgebra(kind).unwrap();
        dims.push(b.dims());
        let expected = span(&k10, kind.basis_labels());
        ok &= b == expected && b.dims() == kind.expected_dims();
        ok &= is_subalgebra(&k10, &b) && b.dim() < 10 && b.contains(&k10, &unit).unwrap();
        ok &= maximality_probe(&k10, &b, 200, 100 + i as u64).unwrap().is_probably_maximal();
    }
    ok &= dims == vec![(6, 0), (3, 2), (4, 3), (5, 2)];
    let small = span(&k10, &["e", "f", "c1", "p1", "q1"]);
    let iv = maximal_subalgebra(MaximalKind::IV).unwrap();
    let refuted = match maximality_probe(&k10, &small, 200, 8).unwrap() {
        ProbeVerdict::NotMaximal { closure, extension, .. } => {
            closure != small && iv.contains_subspace(&closure).unwrap() && extension == iv
        }
        ProbeVerdict::ProbablyMaximal { .. } => false,
    };
    report(
        8,
        "maximal subalgebras",
        ok && refuted,
        "dims (6,0) (3,2) (4,3) (5,2), 200 random adjunctions each; span{e,f,c1,p1,q1} extends to (iv)",
    );
}

#[test]
fn criterion_09_structure() {
    let k10 = make_k10_table();
    let mut ok = true;

    // (i)
    let (i, j) = king_decomposition(&k10).unwrap();
    ok &= i.dims() == (1, 0) && j.dims() == (5, 0);

    // (ii): idempotent (2e-a)/4 and the complement; the t value is computed
    // by hand from the table: p1·p2 = a + 2e - 6f = 4·(2e+a)/4 - 6·f.
    let b2 = maximal_subalgebra(MaximalKind::II).unwrap();
    let idem = k10.parse_element("1/2*e - 1/4*a").unwrap();
    ok &= k10.mul(&idem, &idem) == idem;
    let line = GradedSubspace::spanned(&k10, std::slice::from_ref(&idem)).unwrap();
    ok &= is_ideal(&k10, &line, &b2).unwrap();
    let comp = span(&k10, &["f", "2e+a", "p1", "p2"]);
    ok &= comp.elements(&k10).iter().all(|x| k10.mul(&idem, x).is_zero());
    let p1p2 = k10.mul(&k10.elem("p1"), &k10.elem("p2"));
    let e_big = k10.parse_element("1/2*e + 1/4*a").unwrap();
    let oracle_ok = p1p2 == &e_big.scale(&int(4)) - &k10.elem("f").scale(&int(6));
    let oracle = DtInvariant::from_t(frac(-6, 4));
    let computed = dt_parameter_of(&k10, &comp).unwrap();
    ok &= oracle_ok && computed == oracle;
    let agrees = computed.contains(&int(-6));
    ok &= structure_report(MaximalKind::II).unwrap().dt == Some(computed.clone());

    // (iii)
    let b3 = maximal_subalgebra(MaximalKind::III).unwrap();
    let r3 = span(&k10, &["c1", "a+b", "p1+q1"]);
    ok &= is_ideal(&k10, &r3, &b3).unwrap() && is_solvable(&k10, &r3);
    let q3 = quotient(&k10, &b3, &r3).unwrap();
    ok &= dt_parameter(&q3.quotient).unwrap() == DtInvariant::Pair(int(-3), frac(-1, 3));

    // (iv)
    let b4 = maximal_subalgebra(MaximalKind::IV).unwrap();
    let r4 = span(&k10, &["c1", "p1", "q1"]);
    ok &= is_ideal(&k10, &r4, &b4).unwrap() && is_solvable(&k10, &r4);
    let q4 = quotient(&k10, &b4, &r4).unwrap().quotient;
    let (e, a, b) = (q4.elem("[e]"), q4.elem("[a]"), q4.elem("[b]"));
    ok &= q4.mul(&a, &a) == e.scale(&int(4)) && q4.mul(&b, &b) == e.scale(&int(-4)) && q4.mul(&a, &b).is_zero();
    ok &= structure_report(MaximalKind::IV).is_ok();

    let note = if agrees {
        format!("(ii) agrees with t = -6: {computed}")
    } else {
        format!("(ii) DEVIATION: stated t = -6, computed {computed}")
    };
    report(9, "structure of the maximal subalgebras", ok, &note);
}

#[test]
fn criterion_10_tensor_descriptions() {
    let k10 = make_k10_table();
    let iso = table_tensor_iso().unwrap();
    let t = iso.target().clone();
    let mut ok = true;
    ok &= maximal_subalgebra(MaximalKind::III).unwrap().image(&iso).unwrap()
        == span(&t, &["1", "e⊗e", "x⊗x", "x⊗y", "e⊗x", "x⊗e", "e⊗y"]);
    ok &= maximal_subalgebra(MaximalKind::IV).unwrap().image(&iso).unwrap()
        == span(&t, &["1", "e⊗e", "x⊗e", "x⊗x", "x⊗y", "y⊗y", "e⊗y"]);
    let fixed = fixed_subalgebra(&swap_automorphism().unwrap()).unwrap().image(&iso.inverse().unwrap()).unwrap();
    let expected = span(&k10, &["e", "f", "c1+c2", "p1-q2", "p2-q1"]);
    ok &= fixed == expected;
    let w = conjugation_witness(MaximalKind::II).unwrap();
    ok &= w.automorphism.is_isomorphism();
    let image = maximal_subalgebra(MaximalKind::II).unwrap().image(&w.automorphism).unwrap();
    ok &= image == expected;
    // Odd part of the image versus {z odd : (c1+c2) z = -z}.
    let c = k10.parse_element("c1 + c2").unwrap();
    let eigen: Vec<Element> = ["p1-q2", "p2-q1"].iter().map(|s| k10.parse_element(s).unwrap()).collect();
    ok &= eigen.iter().all(|z| k10.mul(&c, z) == -z);
    let odd_image = image.intersect(&GradedSubspace::odd_part(&k10)).unwrap();
    ok &= odd_image == GradedSubspace::spanned(&k10, &eigen).unwrap();
    let others = ["p1+q2", "p2+q1"].iter().all(|s| {
        let z = k10.parse_element(s).unwrap();
        k10.mul(&c, &z) == z
    });
    report(10, "tensor descriptions of the maximal subalgebras", ok && others, "echelon equality of all four subspaces");
}

#[test]
fn criterion_11_determinism() {
    let bin = env!("CARGO_BIN_EXE_jord");
    let run = |threads: &str| {
        let out = Command::new(bin)
            .args(["--threads", threads, "verify-paper", "--seed", "42"])
            .output()
            .expect("binary runs");
        (out.status.code(), out.stdout)
    };
    let (c1, a) = run("1");
    let (c2, b) = run("1");
    let (c3, c) = run("4");
    let text = String::from_utf8_lossy(&a);
    let rows = text.lines().filter(|l| l.contains("PASS") || l.contains("FAIL") || l.contains("DEVIATION")).count();
    let ok = c1 == Some(0) && c2 == Some(0) && c3 == Some(0) && a == b && a == c && !a.is_empty() && rows >= 13;
    report(11, "verifier determinism", ok, &format!("{} bytes, identical across runs and thread counts", a.len()));
}

