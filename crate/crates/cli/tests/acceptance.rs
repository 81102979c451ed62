//! Acceptance suite: every criterion runs at its stated tolerance and prints
//! one pass/fail line (visible with `cargo test --test acceptance -- --nocapture`).

use std::process::Command;
use std::time::{Duration, Instant};

use qpol::discrimination::{minimize_s_overlap, p_min_k};
use qpol::entanglement::{concurrence_bell_diagonal, concurrence_werner, wootters_concurrence};
use qpol::fock::{
    polarization_unitary, projector_sector, stokes_operators, EulerAngles, FockBasis,
    SectorOperator,
};
use qpol::polarization::{degree_chernoff, degree_chernoff_bell_diagonal};
use qpol::states::{
    bell_diagonal_state, unpolarized_state, werner_params, BellDiagonalParams, UnpolarizedSpec,
};
use qpol::sweep::{find_crossing, sweep, Family};
use rand::{rngs::StdRng, Rng, SeedableRng};

fn conclude(label: &str, ok: bool, details: &str) {
    println!("criterion {label}: {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {label} failed: {details}");
}

/// Runs the installed binary and returns (stdout, elapsed).
fn run_binary(args: &[&str]) -> (String, Duration) {
    let start = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_qpol"))
        .args(args)
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    assert!(
        output.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&output.stderr)
    );
    (String::from_utf8(output.stdout).expect("utf8"), elapsed)
}

fn parse_field(stdout: &str, field: &str) -> f64 {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{field}: ")))
        .unwrap_or_else(|| panic!("missing field {field} in:\n{stdout}"))
        .parse()
        .expect("numeric field")
}

fn random_params(rng: &mut StdRng) -> BellDiagonalParams {
    let raw: [f64; 4] = std::array::from_fn(|_| -(1.0 - rng.gen::<f64>()).ln());
    let sum: f64 = raw.iter().sum();
    BellDiagonalParams::new(raw[0] / sum, raw[1] / sum, raw[2] / sum, raw[3] / sum).unwrap()
}

fn random_angles(rng: &mut StdRng) -> EulerAngles {
    let range = -2.0 * std::f64::consts::PI..2.0 * std::f64::consts::PI;
    EulerAngles::new(
        rng.gen_range(range.clone()),
        rng.gen_range(range.clone()),
        rng.gen_range(range),
    )
}

#[test]
fn criterion_1_werner_crossing() {
    let (stdout, elapsed) = run_binary(&["crossing", "werner", "--lo", "0.3", "--hi", "0.4"]);
    let location = parse_field(&stdout, "crossing_full");
    let deviation = (location - 0.3595871).abs();
    let ok = deviation <= 1e-4 && elapsed < Duration::from_secs(1);
    conclude(
        "1 (werner crossing a~ = 0.3595871 +/- 1e-4, < 1 s)",
        ok,
        &format!("location {location}, deviation {deviation:.2e}, elapsed {elapsed:?}"),
    );
}

#[test]
fn criterion_2_x_family_crossings() {
    let (plus_out, plus_time) = run_binary(&["crossing", "x-family", "--lo", "0.5", "--hi", "0.7"]);
    let (minus_out, minus_time) =
        run_binary(&["crossing", "x-family", "--lo", "-0.7", "--hi", "-0.5"]);
    let plus = parse_field(&plus_out, "crossing_full");
    let minus = parse_field(&minus_out, "crossing_full");
    let dev_plus = (plus - 0.584413).abs();
    let dev_minus = (minus + 0.584413).abs();
    let ok = dev_plus <= 1e-4
        && dev_minus <= 1e-4
        && plus_time < Duration::from_secs(1)
        && minus_time < Duration::from_secs(1);
    conclude(
        "2 (x-family crossings x~ = +/-0.584413 +/- 1e-4, < 1 s each)",
        ok,
        &format!("x+ = {plus} (dev {dev_plus:.2e}), x- = {minus} (dev {dev_minus:.2e})"),
    );
}

#[test]
fn criterion_3_werner_closed_form_endpoints() {
    let degree_mixed = degree_chernoff_bell_diagonal(&werner_params(0.0).unwrap());
    let degree_pure = degree_chernoff_bell_diagonal(&werner_params(1.0).unwrap());
    let c_third = concurrence_werner(1.0 / 3.0).unwrap();
    let c_one = concurrence_werner(1.0).unwrap();
    let ok = degree_mixed.abs() < 1e-9
        && (degree_pure - 0.75).abs() < 1e-9
        && c_third == 0.0
        && c_one == 1.0;
    conclude(
        "3 (P_C(0) = 0, P_C(1) = 0.75 within 1e-9; C(1/3) = 0, C(1) = 1 exactly)",
        ok,
        &format!(
            "P_C(0) = {degree_mixed:e}, P_C(1) = {degree_pure}, C(1/3) = {c_third}, C(1) = {c_one}"
        ),
    );
}

#[test]
fn criterion_4_closed_form_vs_general_path() {
    let start = Instant::now();
    let basis = FockBasis::new(3);
    let mut rng = StdRng::seed_from_u64(40104);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let p = random_params(&mut rng);
        let rho = bell_diagonal_state(basis, &p).unwrap();
        let general = degree_chernoff(&rho).degree;
        let closed = degree_chernoff_bell_diagonal(&p);
        worst = worst.max((general - closed).abs());
    }
    let elapsed = start.elapsed();
    let ok = worst < 1e-6 && elapsed < Duration::from_secs(60);
    conclude(
        "4 (200 random states: |general - closed| < 1e-6, < 60 s)",
        ok,
        &format!("worst disagreement {worst:.3e}, elapsed {elapsed:?}"),
    );
}

#[test]
fn criterion_5_concurrence_oracle_equivalence() {
    let start = Instant::now();
    let basis = FockBasis::new(3);
    let mut rng = StdRng::seed_from_u64(50105);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let p = random_params(&mut rng);
        let rho = bell_diagonal_state(basis, &p).unwrap();
        let oracle = wootters_concurrence(&rho).unwrap();
        let closed = concurrence_bell_diagonal(&p);
        worst = worst.max((oracle - closed).abs());
    }
    let elapsed = start.elapsed();
    let ok = worst < 1e-10 && elapsed < Duration::from_secs(10);
    conclude(
        "5 (500 random states: |wootters - closed form| < 1e-10, < 10 s)",
        ok,
        &format!("worst disagreement {worst:.3e}, elapsed {elapsed:?}"),
    );
}

#[test]
fn criterion_6_sign_pattern_reproduction() {
    // x-family: C >= P on [-1, x~-], C < P on (x~-, x~+), C >= P on [x~+, 1]
    let x_plus = find_crossing(Family::XFamily, 0.5, 0.7).unwrap().location;
    let x_minus = find_crossing(Family::XFamily, -0.7, -0.5).unwrap().location;
    let records = sweep(Family::XFamily, 201, false).unwrap();
    let mut x_ok = true;
    for r in &records {
        let gap = r.concurrence - r.degree_pol;
        let expected_nonnegative = r.param <= x_minus || r.param >= x_plus;
        if expected_nonnegative != (gap >= 0.0) {
            x_ok = false;
        }
    }

    // werner: P > C below a~, C > P above
    let a_cross = find_crossing(Family::Werner, 0.3, 0.4).unwrap().location;
    let werner_records = sweep(Family::Werner, 201, false).unwrap();
    let mut a_ok = true;
    for r in &werner_records {
        let gap = r.concurrence - r.degree_pol;
        // skip the a = 0 point where both measures vanish identically
        if r.param == 0.0 {
            continue;
        }
        if (r.param < a_cross) != (gap < 0.0) {
            a_ok = false;
        }
    }

    conclude(
        "6 (201-point sweeps reproduce the three-band x pattern and two-band a pattern)",
        x_ok && a_ok,
        &format!("x bands ok: {x_ok}, a bands ok: {a_ok} (edges {x_minus:.6}, {x_plus:.6}, {a_cross:.6})"),
    );
}

#[test]
fn criterion_7_discrimination_properties() {
    let basis = FockBasis::new(3);
    let mut rng = StdRng::seed_from_u64(70107);
    let mut bound_ok = true;
    let mut decay_ok = true;
    let mut symmetry_worst: f64 = 0.0;
    for _ in 0..20 {
        let rho = bell_diagonal_state(basis, &random_params(&mut rng)).unwrap();
        let zeta = bell_diagonal_state(basis, &random_params(&mut rng)).unwrap();
        let forward = minimize_s_overlap(&rho, &zeta).unwrap();
        let backward = minimize_s_overlap(&zeta, &rho).unwrap();
        symmetry_worst = symmetry_worst.max((-forward.q_star.ln() - -backward.q_star.ln()).abs());
        let mut previous = 0.5;
        for k in 1..=3u32 {
            let p = p_min_k(&rho, &zeta, k).unwrap();
            if p > 0.5 * forward.q_star.powi(k as i32) + 1e-12 {
                bound_ok = false;
            }
            if p > previous + 1e-12 {
                decay_ok = false;
            }
            previous = p;
        }
    }
    let ok = bound_ok && decay_ok && symmetry_worst < 1e-8;
    conclude(
        "7 (20 random pairs: P_min^k <= q*^k/2, monotone decay, xi symmetry < 1e-8)",
        ok,
        &format!(
            "bound ok: {bound_ok}, decay ok: {decay_ok}, worst xi asymmetry {symmetry_worst:.3e}"
        ),
    );
}

#[test]
fn criterion_8_structural_invariants() {
    // Stokes commutation for every truncation up to n_max = 6
    let mut commutation_worst: f64 = 0.0;
    for n_max in 0..=6 {
        let (s1, s2, s3) = stokes_operators(FockBasis::new(n_max));
        let two_i = num_complex::Complex64::new(0.0, 2.0);
        for (a, b, c) in [(&s1, &s2, &s3), (&s2, &s3, &s1), (&s3, &s1, &s2)] {
            let commutator = &(a * b) - &(b * a);
            commutation_worst = commutation_worst.max(commutator.max_abs_diff(&c.scale(two_i)));
        }
    }

    // unitarity and sector preservation of U_pol
    let basis = FockBasis::new(6);
    let identity = SectorOperator::identity(basis);
    let mut rng = StdRng::seed_from_u64(80108);
    let mut unitarity_worst: f64 = 0.0;
    let mut sector_worst: f64 = 0.0;
    for _ in 0..20 {
        let u = polarization_unitary(basis, random_angles(&mut rng));
        unitarity_worst = unitarity_worst.max((&u * &u.adjoint()).max_abs_diff(&identity));
        for n in 0..=6 {
            let p = projector_sector(basis, n).unwrap();
            sector_worst = sector_worst.max(p.conjugate_by(&u).max_abs_diff(&p));
        }
    }

    // unpolarized-state invariance under 20 random polarization unitaries
    let spec = UnpolarizedSpec::new(vec![0.05, 0.1, 0.15, 0.2, 0.2, 0.15, 0.15]).unwrap();
    let sigma = unpolarized_state(basis, &spec).unwrap();
    let mut invariance_worst: f64 = 0.0;
    for _ in 0..20 {
        let u = polarization_unitary(basis, random_angles(&mut rng));
        invariance_worst =
            invariance_worst.max(sigma.conjugate_by(&u).op().max_abs_diff(sigma.op()));
    }

    let ok = commutation_worst < 1e-10
        && unitarity_worst < 1e-10
        && sector_worst < 1e-10
        && invariance_worst < 1e-10;
    conclude(
        "8 (Stokes commutation, U_pol unitarity and sector preservation, unpolarized invariance, all < 1e-10)",
        ok,
        &format!(
            "commutation {commutation_worst:.3e}, unitarity {unitarity_worst:.3e}, sector {sector_worst:.3e}, invariance {invariance_worst:.3e}"
        ),
    );
}

#[test]
fn criterion_9_polarization_invariance_of_the_measure() {
    let basis = FockBasis::new(3);
    let mut rng = StdRng::seed_from_u64(90109);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let p = random_params(&mut rng);
        let rho = bell_diagonal_state(basis, &p).unwrap();
        let u = polarization_unitary(basis, random_angles(&mut rng));
        let rotated = degree_chernoff(&rho.conjugate_by(&u)).degree;
        let reference = degree_chernoff(&rho).degree;
        worst = worst.max((rotated - reference).abs());
    }
    let ok = worst < 1e-7;
    conclude(
        "9 (P_C(U rho U+) = P_C(rho) within 1e-7 on random states and angles)",
        ok,
        &format!("worst deviation {worst:.3e}"),
    );
}
