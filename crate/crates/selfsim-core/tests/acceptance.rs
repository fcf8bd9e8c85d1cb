//! Acceptance suite. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test --test acceptance -- --nocapture` to see them all.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use selfsim_core::{
    attractor_hull, build_catalog, build_curve_poly, certify_exception, compose_affine,
    enumerate_pairs, orbit_sufficient_condition, reduced_similarity_dimension, restrict_y1,
    sample_measure, similarity_dimension, solve_d, BiPoly, SdHatMethod, SeqPair, TraceConfig,
};

fn criterion(number: u32, label: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("[PASS] criterion {number}: {label}"),
        Err(msg) => {
            println!("[FAIL] criterion {number}: {label}: {msg}");
            panic!("criterion {number} failed: {msg}");
        }
    }
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

fn uniform_in(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * uniform(rng)
}

fn poly_from(terms: &[((u32, u32), i64)]) -> BiPoly {
    BiPoly::from_terms(terms.iter().copied())
}

fn paper_pair() -> SeqPair {
    SeqPair::parse("+---+", "-++--").unwrap()
}

/// The four length-six pairs, the last with its misprinted sequence
/// resolved to the unique repair reproducing the published equation.
fn six_pairs() -> Vec<SeqPair> {
    [
        ("+--+++", "-++++-"),
        ("+-+-++", "-++++-"),
        ("+---++", "-+-++-"),
        ("+---++", "-++-+-"),
    ]
    .iter()
    .map(|(s, t)| SeqPair::parse(s, t).unwrap())
    .collect()
}

#[test]
fn criterion_01_exact_equation_n5() {
    criterion(1, "length-5 curve equation reproduced exactly", || {
        let expected = poly_from(&[
            ((2, 3), 2),
            ((2, 2), 1),
            ((2, 1), -1),
            ((1, 3), -1),
            ((1, 2), -1),
            ((1, 1), -2),
            ((1, 0), 1),
            ((0, 1), 1),
        ]);
        let built = build_curve_poly(&paper_pair());
        if built != expected {
            return Err(format!("built {built}, expected {expected}"));
        }
        Ok(())
    });
}

#[test]
fn criterion_02_exact_equations_n6() {
    criterion(2, "all four length-6 curve equations reproduced exactly", || {
        let expected: [BiPoly; 4] = [
            poly_from(&[
                ((4, 2), 2),
                ((4, 1), -1),
                ((3, 2), 1),
                ((3, 1), -1),
                ((2, 2), 1),
                ((2, 1), -1),
                ((1, 2), -1),
                ((1, 1), -2),
                ((1, 0), 1),
                ((0, 1), 1),
            ]),
            poly_from(&[
                ((4, 2), 2),
                ((4, 1), -1),
                ((3, 2), 1),
                ((3, 1), -1),
                ((2, 2), -1),
                ((1, 1), -2),
                ((1, 0), 1),
                ((0, 1), 1),
            ]),
            poly_from(&[
                ((3, 3), 2),
                ((3, 2), -1),
                ((2, 3), 1),
                ((2, 2), -1),
                ((1, 3), -1),
                ((1, 1), -2),
                ((1, 0), 1),
                ((0, 1), 1),
            ]),
            poly_from(&[
                ((3, 3), 2),
                ((3, 2), -1),
                ((2, 3), 1),
                ((2, 2), 1),
                ((2, 1), -1),
                ((1, 3), -1),
                ((1, 2), -1),
                ((1, 1), -2),
                ((1, 0), 1),
                ((0, 1), 1),
            ]),
        ];
        for (idx, (pair, want)) in six_pairs().iter().zip(&expected).enumerate() {
            let built = build_curve_poly(pair);
            if &built != want {
                return Err(format!("pair {}: built {built}, expected {want}", idx + 1));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_03_catalog_counts_n3_to_n5() {
    criterion(3, "R-intersections: none at n=3,4 and exactly one class at n=5", || {
        let records = build_catalog(3, 5, &TraceConfig::default()).map_err(|e| e.to_string())?;
        let mut n5_hits = Vec::new();
        for record in &records {
            match record.pair.n() {
                3 | 4 => {
                    if record.intersects_r {
                        return Err(format!(
                            "unexpected witness for {}/{}",
                            record.pair.s(),
                            record.pair.t()
                        ));
                    }
                }
                5 => {
                    if record.intersects_r {
                        n5_hits.push(record.pair.clone());
                    }
                }
                other => return Err(format!("unexpected length {other}")),
            }
        }
        let expected = paper_pair().canonical_form();
        if n5_hits.len() != 1 {
            return Err(format!("expected one intersecting class, got {}", n5_hits.len()));
        }
        if n5_hits[0] != expected {
            return Err(format!(
                "intersecting class is {}/{}, expected the published pair's class {}/{}",
                n5_hits[0].s(),
                n5_hits[0].t(),
                expected.s(),
                expected.t()
            ));
        }
        Ok(())
    });
}

#[test]
fn criterion_04_certificate_for_the_n5_pair() {
    criterion(4, "length-5 certificate separates the dimension bounds", || {
        let cert =
            certify_exception(&paper_pair(), &TraceConfig::default()).map_err(|e| e.to_string())?;
        if cert.overlap_residual > 1e-9 {
            return Err(format!("overlap residual {:e}", cert.overlap_residual));
        }
        if !cert.point.in_r() {
            return Err("witness point not in R".into());
        }
        if cert.point.residual() > 1e-9 {
            return Err(format!("point residual {:e}", cert.point.residual()));
        }
        if cert.sd < 1.0 + 1e-6 {
            return Err(format!("SD margin too small: {}", cert.sd));
        }
        if cert.sd_hat > 1.0 - 1e-6 {
            return Err(format!("reduced-SD margin too small: {}", cert.sd_hat));
        }
        Ok(())
    });
}

#[test]
fn criterion_05_dimension_equals_exponent_at_p_m() {
    criterion(5, "SD at p_M reproduces the exponent d", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xd17e);
        let mut tested = 0;
        while tested < 100 {
            let beta1 = uniform_in(&mut rng, 0.05, 0.99);
            let beta2 = uniform_in(&mut rng, 0.05, 0.99);
            if beta1 + beta2 <= 1.0 {
                continue;
            }
            tested += 1;
            let d = solve_d(beta1, beta2).map_err(|e| e.to_string())?;
            let p_m = beta1.powf(d);
            let sd = similarity_dimension(beta1, beta2, p_m).map_err(|e| e.to_string())?;
            if (sd - d).abs() > 1e-10 {
                return Err(format!(
                    "|SD(p_M) - d| = {:e} at ({beta1}, {beta2})",
                    (sd - d).abs()
                ));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_06_reduced_dimension_is_strictly_smaller() {
    criterion(6, "reduced SD < SD across pairs, ratios and the weight grid", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5d5d);
        let betas: Vec<(f64, f64)> = (0..20)
            .map(|_| {
                (
                    uniform_in(&mut rng, 0.05, 0.95),
                    uniform_in(&mut rng, 0.05, 0.95),
                )
            })
            .collect();
        let grid: Vec<f64> = (0..1000)
            .map(|i| 1e-3 + i as f64 * (1.0 - 2e-3) / 999.0)
            .collect();
        for n in 3..=6 {
            for class in enumerate_pairs(n).map_err(|e| e.to_string())?.pairs {
                // Sweep every ordered pair in the class: FLIP changes the
                // merged atom's weight, so orientations are not redundant.
                let mut members: Vec<SeqPair> = class.orbit().to_vec();
                members.sort();
                members.dedup();
                for pair in members {
                    let ones = pair.s().ones();
                    let len = pair.n();
                    for &(beta1, beta2) in &betas {
                        for &p in &grid {
                            let sd = similarity_dimension(beta1, beta2, p).unwrap();
                            let closed = reduced_similarity_dimension(
                                &pair,
                                beta1,
                                beta2,
                                p,
                                SdHatMethod::Closed,
                            )
                            .unwrap();
                            if closed >= sd {
                                return Err(format!(
                                    "violation at n={len} ones={ones} ({beta1},{beta2},{p}): {closed} >= {sd}"
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_07_brute_and_closed_forms_agree() {
    criterion(7, "word enumeration matches the closed entropy form", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0b0b);
        for trial in 0..1000 {
            let n = 3 + (rng.next_u64() % 6) as usize; // 3..=8
            let pair = loop {
                let draw = |rng: &mut ChaCha8Rng| -> Vec<i8> {
                    (0..n).map(|_| if rng.next_u64() & 1 == 1 { 1 } else { -1 }).collect()
                };
                let s = draw(&mut rng);
                let t = draw(&mut rng);
                let ones = |v: &[i8]| v.iter().filter(|&&e| e == 1).count();
                if s != t && ones(&s) == ones(&t) {
                    if let Ok(pair) = SeqPair::parse(
                        &s.iter().map(|&v| if v == 1 { '+' } else { '-' }).collect::<String>(),
                        &t.iter().map(|&v| if v == 1 { '+' } else { '-' }).collect::<String>(),
                    ) {
                        break pair;
                    }
                }
            };
            let beta1 = uniform_in(&mut rng, 0.05, 0.95);
            let beta2 = uniform_in(&mut rng, 0.05, 0.95);
            let p = uniform_in(&mut rng, 0.01, 0.99);
            let brute = reduced_similarity_dimension(&pair, beta1, beta2, p, SdHatMethod::Brute)
                .map_err(|e| e.to_string())?;
            let closed = reduced_similarity_dimension(&pair, beta1, beta2, p, SdHatMethod::Closed)
                .map_err(|e| e.to_string())?;
            if (brute - closed).abs() > 1e-12 {
                return Err(format!(
                    "trial {trial}: |brute - closed| = {:e}",
                    (brute - closed).abs()
                ));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_08_offset_difference_equals_curve_value() {
    criterion(8, "composition offsets reproduce the curve polynomial", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xabcd);
        let mut classes = Vec::new();
        for n in 3..=6 {
            classes.extend(enumerate_pairs(n).map_err(|e| e.to_string())?.pairs);
        }
        let per_class = 1000usize.div_ceil(classes.len());
        for pair in &classes {
            let poly = build_curve_poly(pair);
            for _ in 0..per_class {
                let x = uniform_in(&mut rng, 1e-3, 1.0 - 1e-3);
                let y = uniform_in(&mut rng, 1e-3, 1.0 - 1e-3);
                let map_s = compose_affine(pair.s(), x, y).unwrap();
                let map_t = compose_affine(pair.t(), x, y).unwrap();
                let diff = map_s.offset - map_t.offset;
                let value = poly.evaluate(x, y);
                let scale = value.abs().max(1.0);
                if (diff - value).abs() > 1e-12 * scale {
                    return Err(format!(
                        "{}/{} at ({x}, {y}): offsets {diff} vs polynomial {value}",
                        pair.s(),
                        pair.t()
                    ));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_09_prefix_condition_forces_intersection() {
    criterion(9, "prefix condition implies an R-witness plus exact boundary values", || {
        for n in 3..=6 {
            for class in enumerate_pairs(n).map_err(|e| e.to_string())?.pairs {
                let Some((oriented, _)) = orbit_sufficient_condition(&class) else {
                    continue;
                };
                let witness = selfsim_core::intersects_r(
                    &build_curve_poly(&class),
                    &TraceConfig::default(),
                )
                .map_err(|e| e.to_string())?;
                if witness.is_none() {
                    return Err(format!(
                        "no witness for satisfying class {}/{}",
                        class.s(),
                        class.t()
                    ));
                }
                let f = restrict_y1(&build_curve_poly(&oriented));
                if f.at_zero() != 1 {
                    return Err(format!("f(0) = {} for {}", f.at_zero(), oriented.s()));
                }
                if f.at_one() != 0 {
                    return Err(format!("f(1) = {} for {}", f.at_one(), oriented.s()));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_10_sampler_stays_in_the_hull_and_is_deterministic() {
    criterion(10, "chaos-game samples stay in the attractor hull, seed-stable", || {
        let cert =
            certify_exception(&paper_pair(), &TraceConfig::default()).map_err(|e| e.to_string())?;
        let (beta1, beta2) = (cert.point.beta1(), cert.point.beta2());
        let first = sample_measure(beta1, beta2, cert.witness_p, 100_000, 42)
            .map_err(|e| e.to_string())?;
        let second = sample_measure(beta1, beta2, cert.witness_p, 100_000, 42)
            .map_err(|e| e.to_string())?;
        if first != second {
            return Err("equal seeds produced different orbits".into());
        }
        let (lo, hi) = attractor_hull(beta1, beta2);
        if let Some(bad) = first.points.iter().find(|&&x| x < lo || x > hi) {
            return Err(format!("sample {bad} escapes the hull [{lo}, {hi}]"));
        }
        Ok(())
    });
}
