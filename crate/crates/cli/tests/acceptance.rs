//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. All comparisons are exact.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};

use leibniz_plane::complex::{compose_bar, graded_bracket, is_maurer_cartan};
use leibniz_plane::doubles::{
    bidegree_decompose, flow_transform, hh_check, is_anti_triangular, killing_form, killing_r_matrix, lybe_check,
    predicted_flow_components, r_to_hamiltonian, semisimple_double, RMatrix,
};
use leibniz_plane::nijenhuis::{fnc_check, is_complex_structure, torsion, Operator1};
use leibniz_plane::poly::Monomial;
use leibniz_plane::rational::{int, zero};
use leibniz_plane::structures::{
    check_invariance, field_from_bracket, first_term_field, invariance_theorem_check, is_anticyclic,
    is_leibniz_field, psi, psi_lemma_check, psi_of_degree, semidirect_double, skew_bracket_consistency,
    structure_field,
};
use leibniz_plane::{Cochain, LeibnizAlgebra, Matrix, Polynomial, Rational, VectorField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- sampling

fn small(rng: &mut ChaCha8Rng) -> Rational {
    if rng.gen_bool(0.5) {
        zero()
    } else {
        int(rng.gen_range(-2..=2))
    }
}

fn random_cochain(rng: &mut ChaCha8Rng, dim: usize, arity: usize) -> Cochain {
    Cochain::from_fn(dim, arity, |_| (0..dim).map(|_| small(rng)).collect())
}

fn random_matrix(rng: &mut ChaCha8Rng, size: usize) -> Matrix {
    Matrix::from_rows((0..size).map(|_| (0..size).map(|_| int(rng.gen_range(-2..=2))).collect()).collect()).unwrap()
}

fn random_symmetric(rng: &mut ChaCha8Rng, size: usize) -> Matrix {
    let mut m = Matrix::zeros(size, size);
    for i in 0..size {
        for j in i..size {
            let c = int(rng.gen_range(-1..=1));
            m[(i, j)] = c.clone();
            m[(j, i)] = c;
        }
    }
    m
}

/// A homogeneous polynomial of degree `deg` in `2n` variables with up to
/// `terms` monomials, each drawn with a nonzero coefficient.
fn random_homogeneous(rng: &mut ChaCha8Rng, n: usize, deg: usize, terms: usize) -> Polynomial {
    let count = rng.gen_range(1..=terms);
    let ts = (0..count).map(|_| {
        let mut e = vec![0u32; 2 * n];
        for _ in 0..deg {
            e[rng.gen_range(0..2 * n)] += 1;
        }
        let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        (Monomial::from_exponents(e), int(c))
    });
    Polynomial::from_terms(n, ts.collect::<Vec<_>>()).unwrap()
}

fn random_field(rng: &mut ChaCha8Rng, n: usize, deg: usize) -> VectorField {
    VectorField::new(n, (0..2 * n).map(|_| random_homogeneous(rng, n, deg, 2)).collect()).unwrap()
}

// ---------------------------------------------------------------- oracles

fn fixtures() -> Vec<LeibnizAlgebra> {
    vec![
        LeibnizAlgebra::abelian(2),
        LeibnizAlgebra::heis(),
        LeibnizAlgebra::sl2(),
        LeibnizAlgebra::so3(),
        LeibnizAlgebra::omni_lie(1).unwrap(),
        LeibnizAlgebra::omni_lie(2).unwrap(),
    ]
}

/// The Leibniz identity straight from structure constants.
fn leibniz_by_brute_force(a: &LeibnizAlgebra) -> bool {
    let d = a.dim();
    let c = |i: usize, j: usize, k: usize| a.constant(i, j, k).clone();
    (0..d).all(|x| {
        (0..d).all(|y| {
            (0..d).all(|z| {
                (0..d).all(|out| {
                    let mut s = zero();
                    for m in 0..d {
                        s += c(y, z, m) * c(x, m, out);
                        s -= c(x, y, m) * c(m, z, out);
                        s -= c(x, z, m) * c(y, m, out);
                    }
                    s == zero()
                })
            })
        })
    })
}

/// `(a, b, sign)`: `N(v_a, v_b)` sits in slot `b − 1` of `M`.
const GOLDEN: [(usize, usize, i64); 10] = [
    (1, 2, 1),
    (1, 3, 1),
    (2, 3, -1),
    (1, 4, 1),
    (2, 4, -1),
    (3, 4, 1),
    (1, 5, 1),
    (2, 5, -1),
    (3, 5, 1),
    (4, 5, -1),
];

fn golden_expansion(m: &Cochain, n: &Cochain) -> Cochain {
    let d = m.dim();
    Cochain::from_fn(d, 5, |v| {
        let mut out = vec![zero(); d];
        for &(a, b, sign) in &GOLDEN {
            let inner = n.eval(&[v[a - 1], v[b - 1]]);
            let rest: Vec<usize> = (1..=5).filter(|&i| i != a && i != b).map(|i| v[i - 1]).collect();
            for (k, nk) in inner.iter().enumerate() {
                let mut args = rest.clone();
                args.insert(b - 2, k);
                for (o, x) in out.iter_mut().zip(m.eval(&args)) {
                    *o += int(sign) * nk * x;
                }
            }
        }
        out
    })
}

// ---------------------------------------------------------------- criteria

fn golden_vector() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let trials = 20;
    for t in 0..trials {
        let m = random_cochain(&mut rng, 2, 4);
        let n = random_cochain(&mut rng, 2, 2);
        let got = compose_bar(&m, &n).map_err(|e| e.to_string())?;
        ensure(got == golden_expansion(&m, &n), || format!("trial {t}: expansion differs"))?;
    }
    Ok(format!("{trials} random (arity-4, arity-2) pairs, all 32 basis 5-tuples each"))
}

fn maurer_cartan_vs_leibniz() -> Outcome {
    let algebras = [
        LeibnizAlgebra::abelian(3),
        LeibnizAlgebra::heis(),
        LeibnizAlgebra::sl2(),
        LeibnizAlgebra::so3(),
        LeibnizAlgebra::omni_lie(2).unwrap(),
        LeibnizAlgebra::non_leibniz(),
    ];
    let mut verdicts = Vec::new();
    for a in &algebras {
        let mc = is_maurer_cartan(&a.to_cochain()).map_err(|e| e.to_string())?.0;
        let oracle = leibniz_by_brute_force(a);
        ensure(mc == oracle, || format!("{}: maurer-cartan {mc}, oracle {oracle}", a.name))?;
        verdicts.push(format!("{}={mc}", a.name));
    }
    ensure(verdicts.iter().any(|v| v.ends_with("false")), || "no non-example".into())?;
    Ok(verdicts.join(" "))
}

fn psi_coherence() -> Outcome {
    for a in fixtures() {
        let l = structure_field(&a).map_err(|e| e.to_string())?;
        let lhs = psi_of_degree(l.field(), 1).map_err(|e| e.to_string())?;
        ensure(lhs == semidirect_double(&a).unwrap(), || format!("{}: psi(L) differs from the double", a.name))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pairs = 50;
    for t in 0..pairs {
        let n = rng.gen_range(1..=3);
        let x = random_field(&mut rng, n, 2);
        let h = VectorField::hamiltonian(&random_homogeneous(&mut rng, n, 2, 4));
        ensure(psi_lemma_check(&x, &h).map_err(|e| e.to_string())?, || format!("pair {t} (n={n}) fails"))?;
    }
    Ok(format!("{} fixtures, {pairs} random (X, H) pairs", fixtures().len()))
}

fn invariance() -> Outcome {
    for a in fixtures() {
        let l = structure_field(&a).map_err(|e| e.to_string())?;
        let out = invariance_theorem_check(&l).map_err(|e| e.to_string())?;
        ensure(out.holds(), || format!("{}: invariance fails", a.name))?;
    }
    let first = first_term_field(&LeibnizAlgebra::heis());
    let out = check_invariance(&psi(&first).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(out.left.holds(), || "first-term heis field: left invariance should hold".into())?;
    let w = out.right.first().ok_or("first-term heis field: right invariance unexpectedly holds")?;
    Ok(format!("first-term heis witness {:?} defect {}", w.one_based(), w.value))
}

fn lambda_theta() -> Outcome {
    for a in fixtures() {
        let l = structure_field(&a).map_err(|e| e.to_string())?;
        let out = skew_bracket_consistency(&l).map_err(|e| e.to_string())?;
        ensure(out.holds(), || format!("{}: {:?}", a.name, out.first()))?;
    }
    Ok(format!("{} fixture fields, all basis pairs", fixtures().len()))
}

fn lybe_suite() -> Outcome {
    let sl2 = LeibnizAlgebra::sl2();
    let killing = killing_r_matrix(&sl2).map_err(|e| e.to_string())?;
    for (a, r, what) in [
        (sl2.clone(), RMatrix::zero(3), "r = 0"),
        (sl2.clone(), killing, "sl2 Killing inverse"),
        (LeibnizAlgebra::omni_lie(2).unwrap(), RMatrix::omni_projection(2).unwrap(), "omni projection"),
    ] {
        let out = lybe_check(&a, &r).map_err(|e| e.to_string())?;
        ensure(out.holds(), || format!("{what}: LYBE fails at {:?}", out.general.first()))?;
        ensure(is_anti_triangular(&r).holds(), || format!("{what}: not anti-triangular"))?;
    }
    let pool = [
        LeibnizAlgebra::heis(),
        LeibnizAlgebra::sl2(),
        LeibnizAlgebra::so3(),
        LeibnizAlgebra::omni_lie(1).unwrap(),
        LeibnizAlgebra::abelian(3),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let count = 30;
    let mut solutions = 0;
    for t in 0..count {
        let a = &pool[t % pool.len()];
        let r = RMatrix::new(random_symmetric(&mut rng, a.dim())).unwrap();
        let l = structure_field(a).unwrap();
        let h = r_to_hamiltonian(&r).map_err(|e| e.to_string())?;
        let out = hh_check(&l, &h).map_err(|e| e.to_string())?;
        ensure(out.identity.holds(), || format!("{}: identity fails for r = {:?}", a.name, r))?;
        let lybe = lybe_check(a, &r).map_err(|e| e.to_string())?.holds();
        ensure(lybe == out.lybe.holds(), || format!("{}: field and cochain LYBE disagree", a.name))?;
        solutions += lybe as usize;
    }
    ensure(solutions > 0 && solutions < count, || format!("degenerate sample: {solutions}/{count} solutions"))?;
    Ok(format!("3 named r-matrices; {count} random r ({solutions} solutions)"))
}

fn flow_suite() -> Outcome {
    let a = LeibnizAlgebra::sl2();
    let l = structure_field(&a).unwrap();
    let h = r_to_hamiltonian(&killing_r_matrix(&a).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let res = flow_transform(&l, &h, 8).map_err(|e| e.to_string())?;
    let order = res.terms.len() - 1;
    ensure(order <= 3, || format!("series order {order}"))?;
    let fourth = (0..4).try_fold(l.field().clone(), |x, _| x.commutator(&h)).map_err(|e| e.to_string())?;
    ensure(fourth.is_zero(), || "order-4 bracket is nonzero".into())?;
    ensure(is_leibniz_field(res.field.field()), || "flowed field is not Leibniz".into())?;
    let predicted = predicted_flow_components(&bidegree_decompose(l.field()).unwrap(), &h).map_err(|e| e.to_string())?;
    let actual = bidegree_decompose(res.field.field()).map_err(|e| e.to_string())?;
    ensure(predicted == actual, || "components differ from the four formulas".into())?;
    Ok(format!("series terminates at order {order}"))
}

fn nijenhuis_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let count = 100;
    for t in 0..count {
        let mu = random_cochain(&mut rng, 4, 2);
        let n = Operator1::from_matrix(&random_matrix(&mut rng, 4)).unwrap();
        let (ok, _) = fnc_check(&mu, &n).map_err(|e| e.to_string())?;
        ensure(ok, || format!("pair {t} fails"))?;
    }
    let a = LeibnizAlgebra::sl2();
    let k = killing_form(&a, true).map_err(|e| e.to_string())?;
    let mu = semisimple_double(&a, &k).map_err(|e| e.to_string())?;
    let n = Operator1::complex_structure_from_form(&k).map_err(|e| e.to_string())?;
    let out = is_complex_structure(&mu, &n).map_err(|e| e.to_string())?;
    ensure(out.square_is_minus_one, || "N² ≠ −1".into())?;
    ensure(torsion(&mu, &n).unwrap().is_zero() && out.torsion_free, || "Tor ≠ 0".into())?;
    let double = graded_bracket(&graded_bracket(&mu, n.cochain()).unwrap(), n.cochain()).unwrap();
    ensure(double == mu.scale(&int(-1)) && out.double_bracket_is_minus_mu, || "[[μ,N],N] ≠ −μ".into())?;
    let l = field_from_bracket(&mu).map_err(|e| e.to_string())?;
    let nf = n.as_field();
    let ll = l.field().commutator(&nf).unwrap().commutator(&nf).unwrap();
    ensure(ll == l.field().scale(&int(-1)), || "[[L,N],N] ≠ −L".into())?;
    Ok(format!("{count} random (μ, N) pairs; sl2 double complex structure"))
}

fn degenerate_fields() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let count = 50;
    let mut candidates: Vec<VectorField> = (0..count)
        .map(|t| {
            // polynomial degree 1 (cubic potential) or 3 (quintic)
            let (n, deg) = if t % 2 == 0 { (2, 3) } else { (1, 5) };
            loop {
                let x = VectorField::hamiltonian(&random_homogeneous(&mut rng, n, deg, 3));
                if !x.is_zero() {
                    break x;
                }
            }
        })
        .collect();
    candidates.push(VectorField::zero(2));
    let mut passed = 0;
    for (t, x) in candidates.iter().enumerate() {
        let anti = is_anticyclic(x).map_err(|e| e.to_string())?.holds();
        ensure(anti == x.is_zero(), || format!("candidate {t}: anti-cyclic {anti}, zero {}", x.is_zero()))?;
        passed += anti as usize;
    }
    for t in 0..count {
        let n = rng.gen_range(1..=3);
        let x = VectorField::hamiltonian(&random_homogeneous(&mut rng, n, 2, 5));
        ensure(is_anticyclic(&x).map_err(|e| e.to_string())?.holds(), || format!("degree-0 field {t} fails"))?;
    }
    Ok(format!("{count} nonzero odd-degree candidates plus zero: {passed} passed; {count} degree-0 fields pass"))
}

fn cli_determinism() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let f = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let runs: Vec<(Vec<String>, i32)> = vec![
        (vec!["check".into(), f("abelian.json")], 0),
        (vec!["check".into(), f("heis.json")], 0),
        (vec!["check".into(), f("sl2.json")], 0),
        (vec!["check".into(), f("so3.json")], 0),
        (vec!["check".into(), f("omni.json")], 0),
        (vec!["check".into(), f("bad.json")], 1),
        (vec!["field".into(), f("heis_field.json"), "--check".into()], 0),
        (vec!["field".into(), f("heis_first_term.json"), "--check".into()], 1),
        (vec!["field".into(), f("heis.json"), "--derive".into(), "1".into(), "1".into()], 0),
        (vec!["field".into(), f("heis_field.json"), "--decompose".into()], 0),
        (vec!["lybe".into(), f("heis.json"), "--search=-1,0,1".into()], 0),
        (vec!["lybe".into(), f("heis.json"), f("r_zero.json")], 0),
        (vec!["lybe".into(), f("heis.json"), f("r_heis_nonsolution.json")], 1),
        (vec!["lybe".into(), f("omni.json"), f("omni_r.json")], 0),
        (vec!["lybe".into(), f("sl2.json"), f("sl2_killing_r.json"), "--flow".into()], 0),
        (vec!["nijenhuis".into(), f("sl2.json"), f("sl2_complex.json"), "--killing".into()], 0),
        (vec!["nijenhuis".into(), f("so3.json"), f("identity3.json")], 1),
        (vec!["nijenhuis".into(), f("sl2.json"), f("random3.json")], 1),
        (vec!["nijenhuis".into(), f("heis.json"), f("heis_grading.json")], 1),
        (vec!["double".into(), f("sl2.json"), "--killing".into()], 0),
        (vec!["double".into(), f("omni.json")], 0),
        (vec!["flow".into(), f("sl2.json"), "--r".into(), f("sl2_killing_r.json")], 0),
        (vec!["flow".into(), f("sl2.json"), "--field".into(), f("sl2_killing_h.json")], 0),
        (vec!["check".into(), f("parse_error.json")], 2),
        (vec!["check".into(), f("missing.json")], 2),
    ];
    let bin = PathBuf::from(env!("CARGO_BIN_EXE_leibniz"));
    let run = |args: &[String]| Command::new(&bin).arg("--json").args(args).output().map_err(|e| e.to_string());
    for (args, expected) in &runs {
        let first = run(args)?;
        let second = run(args)?;
        let label = args.join(" ").replace(&*dir.to_string_lossy(), "");
        ensure(first.stdout == second.stdout, || format!("{label}: output differs between runs"))?;
        let code = first.status.code().unwrap_or(-1);
        ensure(code == *expected, || format!("{label}: exit {code}, expected {expected}"))?;
        if *expected < 2 {
            serde_json_check(&first.stdout).map_err(|e| format!("{label}: {e}"))?;
        }
    }
    Ok(format!("{} invocations, each run twice", runs.len()))
}

/// The report must at least be a JSON object with a boolean `pass`.
fn serde_json_check(bytes: &[u8]) -> Result<(), String> {
    let text = std::str::from_utf8(bytes).map_err(|e| e.to_string())?;
    let t = text.trim();
    ensure(t.starts_with('{') && t.ends_with('}'), || "stdout is not a JSON object".into())?;
    ensure(t.contains("\"pass\": true") || t.contains("\"pass\": false"), || "no pass field".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("composition golden vector", golden_vector),
        ("Maurer-Cartan iff Leibniz", maurer_cartan_vs_leibniz),
        ("psi coherence", psi_coherence),
        ("invariance of Leibniz fields", invariance),
        ("Lambda and theta consistency", lambda_theta),
        ("LYBE suite", lybe_suite),
        ("flow suite", flow_suite),
        ("Nijenhuis suite", nijenhuis_suite),
        ("degenerate anti-cyclic fields", degenerate_fields),
        ("CLI determinism and exit codes", cli_determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS  criterion {}: {name} — {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {}: {name} — {why}", k + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
