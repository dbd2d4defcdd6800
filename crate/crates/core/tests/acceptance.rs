//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use creal_core::oracles::{
    brute_involutory_conjugator_in, census, enumerate_gl, gl_order, CensusConfig, CensusMode,
    CensusReport,
};
use creal_core::reality::{
    claim_check_theorem22, cyclic_selfdual_form, form_space_contains, generic_form_space,
    is_c_real, lower_unipotent, skew_form, unipotent_char2_form, FormKind,
};
use creal_core::{
    Field, FieldCtx, FiniteField, GaussianRationals, Mat, Poly, SearchConfig, SelfDuality,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(id: u32, title: &str, budget_s: u64, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = body();
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs(budget_s);
    let pass = out.pass && in_time;
    println!(
        "criterion {id} [{}] {title}: {} ({:.2}s of {budget_s}s){}",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64(),
        if in_time { "" } else { " over time budget" },
    );
    pass
}

fn f4() -> FiniteField {
    FiniteField::new(2, 2, true).unwrap()
}

fn f9() -> FiniteField {
    FiniteField::new(3, 2, true).unwrap()
}

fn element_census(f: &FiniteField, n: usize) -> CensusReport {
    census(f, n, &CensusConfig::default()).unwrap()
}

fn triangle(reports: &[&CensusReport]) -> Outcome {
    let mut detail = Vec::new();
    let mut pass = true;
    for r in reports {
        let q = match FieldCtx::parse(&r.field).unwrap() {
            FieldCtx::Finite(f) => f.order().unwrap(),
            _ => unreachable!("census runs over finite fields"),
        };
        let ok = r.disagreements.is_empty()
            && r.brute_conjugacy_checked
            && r.brute_form_checked
            && r.total_elements == gl_order(q, r.n);
        pass &= ok;
        detail.push(format!(
            "GL_{}({}) {} elements, {} c-real, {} disagreements",
            r.n,
            r.field,
            r.total_elements,
            r.c_real_elements,
            r.disagreements.len()
        ));
        for d in r.disagreements.iter().take(5) {
            eprintln!("  disagreement: {d:?}");
        }
    }
    Outcome {
        pass,
        detail: detail.join("; "),
    }
}

fn monic_units<F: Field>(f: &F, degree: usize) -> Vec<Poly<F::Elem>> {
    let elems = f.elements().unwrap();
    let q = elems.len();
    (0..q.pow(degree as u32))
        .filter_map(|mut idx| {
            let mut coeffs: Vec<F::Elem> = (0..degree)
                .map(|_| {
                    let e = elems[idx % q].clone();
                    idx /= q;
                    e
                })
                .collect();
            coeffs.push(f.one());
            (!f.is_zero(&coeffs[0])).then(|| Poly::from_coeffs(f, coeffs))
        })
        .collect()
}

fn random_unit_poly(f: &FiniteField, rng: &mut ChaCha8Rng, degree: usize) -> Poly<u64> {
    loop {
        let mut coeffs: Vec<u64> = (0..degree).map(|_| f.random(rng)).collect();
        coeffs.push(f.one());
        if !f.is_zero(&coeffs[0]) {
            return Poly::from_coeffs(f, coeffs);
        }
    }
}

fn random_invertible(f: &FiniteField, rng: &mut ChaCha8Rng, n: usize) -> Mat<u64> {
    loop {
        let x = Mat::from_fn(n, n, |_, _| f.random(rng));
        if x.is_invertible(f) {
            return x;
        }
    }
}

/// A random conjugate of a direct sum of self-dual companions and
/// companion pairs `g ⊕ g*`.
fn random_c_real(f: &FiniteField, rng: &mut ChaCha8Rng, n: usize) -> Mat<u64> {
    let norm_one: Vec<u64> = f
        .elements()
        .unwrap()
        .into_iter()
        .filter(|a| f.norm(a) == f.one())
        .collect();
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let choice = rng.gen_range(0..3);
        if choice == 0 || left == 1 {
            let a = norm_one[rng.gen_range(0..norm_one.len())];
            let k = if left >= 2 && rng.gen_bool(0.3) { 2 } else { 1 };
            let g = Poly::linear(f, &a).pow(f, k);
            blocks.push(Mat::companion(f, &g).unwrap());
            left -= k;
        } else {
            let d = if left >= 4 && choice == 2 { 2 } else { 1 };
            let g = random_unit_poly(f, rng, d);
            blocks.push(Mat::companion(f, &g).unwrap());
            blocks.push(Mat::companion(f, &g.dual(f).unwrap()).unwrap());
            left -= 2 * d;
        }
    }
    let t = Mat::block_diag(f, &blocks);
    let x = random_invertible(f, rng, n);
    x.mul(f, &t)
        .unwrap()
        .mul(f, &x.inverse(f).unwrap())
        .unwrap()
}

fn partitions(m: usize, max: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=m.min(max)).rev() {
        for mut rest in partitions(m - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn main() -> ExitCode {
    let cfg = SearchConfig::default();
    let mut results = Vec::new();

    let mut gl2 = Vec::new();
    results.push(run(
        1,
        "equivalence triangle on GL_2(F4), GL_2(F9)",
        60,
        || {
            gl2.push(element_census(&f4(), 2));
            gl2.push(element_census(&f9(), 2));
            triangle(&gl2.iter().collect::<Vec<_>>())
        },
    ));

    let mut gl3 = None;
    results.push(run(2, "class-level check on GL_3(F4)", 120, || {
        let r = census(
            &f4(),
            3,
            &CensusConfig {
                mode: CensusMode::Classes,
                ..CensusConfig::default()
            },
        )
        .unwrap();
        let mut out = triangle(&[&r]);
        out.detail = format!("{} classes; {}", r.total_classes, out.detail);
        gl3 = Some(r);
        out
    }));

    results.push(run(
        3,
        "conjugator validity and involution rate",
        10,
        || {
            let mut pass = true;
            let mut detail = Vec::new();
            for r in gl2.iter().chain(gl3.as_ref()) {
                pass &= r.conjugators_verified == r.c_real_elements;
                detail.push(format!(
                    "GL_{}({}) S verified {}/{}",
                    r.n, r.field, r.conjugators_verified, r.c_real_elements
                ));
            }
            for r in &gl2 {
                pass &= r.strongly_c_real_confirmed == r.c_real_elements;
                detail.push(format!(
                "GL_2({}) S^2 = I for {}/{} ({:.2}%, {} shortfalls proven by exhaustive search)",
                r.field,
                r.strongly_c_real_confirmed,
                r.c_real_elements,
                r.involution_rate,
                r.involution_failures_proven
            ));
                // confirm each shortfall against the whole group
                let f = match FieldCtx::parse(&r.field).unwrap() {
                    FieldCtx::Finite(f) => f,
                    _ => unreachable!("census runs over finite fields"),
                };
                let group = enumerate_gl(&f, 2, cfg.cap).unwrap();
                let mut confirmed = 0;
                for m in &r.involution_failures {
                    eprintln!("  no involutory conjugator over {}: {m}", r.field);
                    let t = Mat::parse(&f, m).unwrap();
                    if brute_involutory_conjugator_in(&f, &group, &t)
                        .unwrap()
                        .is_none()
                    {
                        confirmed += 1;
                    }
                }
                detail.push(format!(
                    "GL_2({}) {confirmed}/{} shortfalls confirmed over the whole group",
                    r.field,
                    r.involution_failures.len()
                ));
            }
            Outcome {
                pass,
                detail: detail.join("; "),
            }
        },
    ));

    results.push(run(
        4,
        "characteristic 2 unipotent forms, m = 1..8",
        5,
        || {
            let mut pass = true;
            let mut checked = 0;
            for f in [f4(), FiniteField::new(2, 4, true).unwrap()] {
                for m in 1..=8 {
                    let one = f.one();
                    let Ok(cert) = unipotent_char2_form(&f, m, &one) else {
                        pass = false;
                        continue;
                    };
                    let t = lower_unipotent(&f, m);
                    pass &= cert.check(&f, &t).is_ok() && cert.nondegenerate;
                    if m % 2 == 0 {
                        let lam = *cert.h.get(0, m - 1);
                        pass &= (0..m).all(|i| *cert.h.get(i, m - 1 - i) == lam);
                        pass &= cert.h.det(&f).unwrap() == f.pow(&lam, m as u128);
                    }
                    checked += 1;
                }
            }
            Outcome {
                pass,
                detail: format!("{checked} forms over F4 and F16"),
            }
        },
    ));

    results.push(run(5, "self-dual cyclic forms of degree <= 4", 60, || {
        let mut pass = true;
        let mut count = 0;
        let mut failures = Vec::new();
        for f in [f4(), f9()] {
            for d in 1..=4 {
                for g in monic_units(&f, d) {
                    if g.self_duality(&f) != SelfDuality::EqualsDual {
                        continue;
                    }
                    count += 1;
                    let t = Mat::companion(&f, &g).unwrap();
                    let ok = cyclic_selfdual_form(&f, &g, &cfg).is_ok_and(|cert| {
                        cert.nondegenerate
                            && cert.check(&f, &t).is_ok()
                            && form_space_contains(
                                &f,
                                &generic_form_space(&f, &t, FormKind::Hermitian).unwrap(),
                                &cert.h,
                            )
                    });
                    if !ok {
                        failures.push(format!("{} over {}", g.format(&f), f.spec()));
                    }
                    pass &= ok;
                }
            }
        }
        for m in &failures {
            eprintln!("  recurrence failed: {m}");
        }
        Outcome {
            pass,
            detail: format!("{count} polynomials, {} failures", failures.len()),
        }
    }));

    results.push(run(6, "skew-hermitian forms over F9, F25", 30, || {
        let mut pass = true;
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut count = 0;
        for f in [f9(), FiniteField::new(5, 2, true).unwrap()] {
            for _ in 0..200 {
                let n = rng.gen_range(1..=4);
                let t = random_c_real(&f, &mut rng, n);
                pass &= is_c_real(&f, &t).unwrap();
                let ok = skew_form(&f, &t, &cfg).is_ok_and(|cert| {
                    cert.kind == FormKind::SkewHermitian
                        && cert.nondegenerate
                        && cert.check(&f, &t).is_ok()
                        && cert.h.conj_transpose(&f) == cert.h.neg(&f)
                });
                if !ok {
                    eprintln!("  skew form failed over {}: {}", f.spec(), t.format(&f));
                }
                pass &= ok;
                count += 1;
            }
        }
        Outcome {
            pass,
            detail: format!("{count} random c-real matrices"),
        }
    }));

    results.push(run(7, "duality algebra", 5, || {
        let mut pass = true;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fields = [
            f4(),
            f9(),
            FiniteField::new(2, 4, true).unwrap(),
            FiniteField::new(5, 2, true).unwrap(),
        ];
        for f in &fields {
            for _ in 0..1000 {
                let (da, db) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
                let a = random_unit_poly(f, &mut rng, da);
                let b = random_unit_poly(f, &mut rng, db);
                let da = a.dual(f).unwrap();
                pass &= da.dual(f).unwrap() == a;
                pass &= a.mul(f, &b).dual(f).unwrap() == da.mul(f, &b.dual(f).unwrap());
            }
        }
        let g = f9();
        let pinned = Poly::parse(&g, "x-(1+i)").unwrap().dual(&g).unwrap();
        pass &= pinned == Poly::parse(&g, "x-(2+2*i)").unwrap();
        Outcome {
            pass,
            detail: format!(
                "{} random pairs per field; dual(x-(1+i)) = {}",
                1000,
                pinned.format(&g)
            ),
        }
    }));

    results.push(run(
        8,
        "symmetric-form claim check in characteristic 2",
        10,
        || {
            let mut lines = 0;
            let mut disagree = Vec::new();
            let mut flagged_i1 = false;
            for spec in [(2, 1), (2, 2)] {
                let f = FiniteField::new(spec.0, spec.1, false).unwrap();
                for m in 1..=4 {
                    for parts in partitions(m, m) {
                        let blocks: Vec<_> =
                            parts.iter().map(|&k| lower_unipotent(&f, k)).collect();
                        let t = Mat::block_diag(&f, &blocks);
                        let r = claim_check_theorem22(&f, &t, &cfg).unwrap();
                        eprintln!(
                            "  {} {:<28} predicted={} ground_truth={:?} {}",
                            r.field,
                            r.matrix,
                            r.predicted,
                            r.ground_truth,
                            r.verdict()
                        );
                        lines += 1;
                        if r.verdict() == "DISAGREE" {
                            disagree.push(format!("{} {}", r.field, r.matrix));
                            if spec == (2, 1) && parts == [1] {
                                flagged_i1 = true;
                            }
                        }
                    }
                }
            }
            Outcome {
                pass: flagged_i1,
                detail: format!(
                    "{lines} reports, {} DISAGREE ({}); I_1 over F2 flagged: {flagged_i1}",
                    disagree.len(),
                    disagree.join(", ")
                ),
            }
        },
    ));

    results.push(run(
        9,
        "decision over Q(i) without factorization",
        5,
        || {
            let g = GaussianRationals;
            let mut pass = true;
            let mut count = 0;
            let values: Vec<String> = (1..=5)
                .flat_map(|re| (1..=5).map(move |im| format!("{re}+{im}*i")))
                .collect();
            let x = Mat::parse(&g, "[[1,2,0];[0,1,1/2];[1,0,1]]").unwrap();
            let x_inv = x.inverse(&g).unwrap();
            for (idx, lit) in values.iter().enumerate() {
                let a = g.parse(lit).unwrap();
                let dual = g.inv(&g.conj(&a)).unwrap();
                let (paired, unpaired) = if idx % 2 == 0 {
                    (
                        Mat::diag(&g, &[a.clone(), dual]),
                        Mat::diag(&g, &[a.clone(), a]),
                    )
                } else {
                    // size 3, padded with the self-dual i and conjugated
                    let i = g.parse("i").unwrap();
                    let p = Mat::diag(&g, &[a.clone(), i.clone(), dual]);
                    let u = Mat::diag(&g, &[a.clone(), i, a]);
                    let conj = |m: &Mat<_>| x.mul(&g, m).unwrap().mul(&g, &x_inv).unwrap();
                    (conj(&p), conj(&u))
                };
                pass &= is_c_real(&g, &paired).unwrap();
                pass &= !is_c_real(&g, &unpaired).unwrap();
                count += 2;
            }
            Outcome {
                pass,
                detail: format!("{count} matrices"),
            }
        },
    ));

    let failed = results.iter().filter(|p| !**p).count();
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
