//! Acceptance suite: one test per reproduction criterion, each printing a
//! PASS/FAIL line. Run with `cargo test --test acceptance -- --nocapture`.
//!
//! Two tests are intentionally red and document genuine obstructions rather
//! than being weakened to pass:
//!   - `c10_cq_qc_null`: the zero-discord null for classical-quantum block
//!     mixtures fails for mixed states; mixing two product blocks can create
//!     an irreducible Svetlichny-box component (the counterexample boxes sit
//!     inside the Svetlichny-box polytope with G of order 0.1).
//!   - `c12_appendix_partial_state`: no six-qubit state can reproduce a
//!     Mermin box with nonmaximally mixed marginals through the
//!     block-conditional rule: the box's perfectly correlated two-party
//!     marginal pins both blocks' pair states to the same pure Bell-type
//!     state, which factorizes them from the rest and kills the required
//!     three-party correlations. The shipped partial state is rejected as
//!     signaling, which is the truthful verdict.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tribox::behavior::{mix, white_noise, Behavior};
use tribox::lro::{apply_lro, permute_parties, LocalReversibleOp, PartyPerm, PartyRelabel};
use tribox::measures::{
    class99_value, mermin_discord, mermin_value, monogamy_check, svetlichny_discord,
};
use tribox::polytope::{membership, three_decomposition, verify_decomposition, VertexSet};
use tribox::quantum::{
    bisep_w, born_box, born_box_blocked, ca_min, classically_correlated_ac, ghz, ghz_class, ghz_w,
    random_settings, sample_cq_qc, settings_class99, settings_gghz_dependent, settings_md_xy,
    settings_md_xz, settings_mixed_p, settings_sd_xy, settings_sd_xz, tau3_ghz_class, w_class,
    werner, BlockStrategy, CqQcKind,
};
use tribox::vertices::{class8_box, mermin_box_mm, svetlichny_box};

const SQRT2: f64 = std::f64::consts::SQRT_2;

fn report(criterion: &str, pass: bool, detail: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {verdict} - {detail}");
}

fn random_r_mixture(rng: &mut ChaCha8Rng, set: &VertexSet, terms: usize) -> Behavior {
    let mut table = [0.0; 64];
    let mut weights: Vec<f64> = (0..terms).map(|_| rng.gen::<f64>()).collect();
    let sum: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= sum;
    }
    for w in &weights {
        let (_, v) = &set.vertices[rng.gen_range(0..set.vertices.len())];
        for (t, p) in table.iter_mut().zip(v.probs().iter()) {
            *t += w * p;
        }
    }
    Behavior::from_probabilities(table).expect("mixture of vertices is valid")
}

#[test]
fn c01_extremal_discord_values() {
    let mut worst: f64 = 0.0;
    for v in 0..16usize {
        let sv = svetlichny_box(
            (v >> 3) as u8 & 1,
            (v >> 2) as u8 & 1,
            (v >> 1) as u8 & 1,
            v as u8 & 1,
        );
        worst = worst.max((svetlichny_discord(&sv) - 8.0).abs());
        worst = worst.max(mermin_discord(&sv));
        let mm = mermin_box_mm(v).unwrap();
        worst = worst.max((mermin_discord(&mm) - 4.0).abs());
        worst = worst.max(svetlichny_discord(&mm));
    }
    let r = VertexSet::r();
    for (tag, b) in &r.vertices[..160] {
        let g = svetlichny_discord(b);
        let q = mermin_discord(b);
        assert!(g == 0.0 && q == 0.0, "nonzero discord on {tag:?}");
    }
    let pass = worst <= 1e-9;
    report(
        "1 extremal values",
        pass,
        format!("max deviation {worst:.2e}"),
    );
    assert!(pass);
}

#[test]
fn c02_isotropic_laws() {
    let sv = svetlichny_box(0, 0, 0, 0);
    let m0 = mermin_box_mm(0).unwrap();
    let noise = white_noise();
    let mut worst: f64 = 0.0;
    for step in 0..=20 {
        let p = step as f64 / 20.0;
        let iso_sv = mix(&[(p, &sv), (1.0 - p, &noise)]).unwrap();
        let iso_m = mix(&[(p, &m0), (1.0 - p, &noise)]).unwrap();
        worst = worst.max((svetlichny_discord(&iso_sv) - 8.0 * p).abs());
        worst = worst.max((mermin_discord(&iso_m) - 4.0 * p).abs());
    }
    let pass = worst <= 1e-9;
    report(
        "2 isotropic laws",
        pass,
        format!("max |G-8p|,|Q-4p| = {worst:.2e}"),
    );
    assert!(pass);
}

#[test]
fn c03_ghz_class_sweeps() {
    let mut worst_g: f64 = 0.0;
    let mut worst_q: f64 = 0.0;
    for ti in 0..15 {
        for t3i in 0..15 {
            let theta = (ti as f64 + 0.5) / 15.0 * std::f64::consts::FRAC_PI_4;
            let theta3 = (t3i as f64 + 0.5) / 15.0 * std::f64::consts::FRAC_PI_2;
            let tau3 = tau3_ghz_class(theta, theta3);
            let rho = ghz_class(theta, theta3).unwrap();
            let bg = born_box(&rho, &settings_sd_xy()).unwrap();
            worst_g = worst_g.max((svetlichny_discord(&bg) - 4.0 * (2.0 * tau3).sqrt()).abs());
            let moduli = tribox::measures::svetlichny_moduli(&bg);
            let nonzero = moduli.iter().filter(|m| **m > 1e-7).count();
            assert_eq!(nonzero, 1, "expected a single active modulus");
            assert!(moduli[0] > 1e-7, "the active modulus sits at (0,0,0)");
            let bq = born_box(&rho, &settings_md_xy()).unwrap();
            worst_q = worst_q.max((mermin_discord(&bq) - 4.0 * tau3.sqrt()).abs());
        }
    }
    let pass = worst_g <= 1e-7 && worst_q <= 1e-7;
    report(
        "3 GHZ-class sweeps",
        pass,
        format!("max |G-4sqrt(2 tau3)| = {worst_g:.2e}, max |Q-4sqrt(tau3)| = {worst_q:.2e}"),
    );
    assert!(pass);
}

#[test]
fn c04_gghz_dependent_settings() {
    let mut worst: f64 = 0.0;
    let mut worst_dec: f64 = 0.0;
    for ti in 1..15 {
        let theta = ti as f64 / 15.0 * std::f64::consts::FRAC_PI_4;
        let tau3 = tau3_ghz_class(theta, std::f64::consts::FRAC_PI_2);
        let rho = ghz_class(theta, std::f64::consts::FRAC_PI_2).unwrap();
        let b = born_box(&rho, &settings_gghz_dependent(theta).unwrap()).unwrap();
        let g_expect = if theta <= std::f64::consts::FRAC_PI_8 {
            8.0 * tau3
        } else {
            8.0 * (tau3 * (1.0 - tau3)).sqrt()
        };
        let q_expect = 4.0 * (tau3 - (tau3 * (1.0 - tau3)).sqrt()).abs();
        let g = svetlichny_discord(&b);
        let q = mermin_discord(&b);
        worst = worst.max((g - g_expect).abs()).max((q - q_expect).abs());
        let dec = three_decomposition(&b).unwrap();
        worst_dec = worst_dec
            .max((dec.mu - g / 8.0).abs())
            .max((dec.nu - q / 4.0).abs())
            .max(dec.residual.distance(&white_noise()));
        let sv = svetlichny_box(
            dec.svet_tag.0,
            dec.svet_tag.1,
            dec.svet_tag.2,
            dec.svet_tag.3,
        );
        let mm = mermin_box_mm(dec.mermin_tag as usize).unwrap();
        let recombined = mix(&[
            (dec.mu, &sv),
            (dec.nu, &mm),
            (1.0 - dec.mu - dec.nu, &dec.residual),
        ])
        .unwrap();
        worst_dec = worst_dec.max(recombined.distance(&b));
    }
    let pass = worst <= 1e-7 && worst_dec <= 1e-7;
    report(
        "4 GGHZ dependent settings",
        pass,
        format!("law error {worst:.2e}, decomposition error {worst_dec:.2e}"),
    );
    assert!(pass);
}

#[test]
fn c05_w_class_sweeps() {
    let mut worst: f64 = 0.0;
    let mut zero_law_ok = true;
    // Simplex grid over squared amplitudes, including boundary points.
    let steps = 8usize;
    for na in 0..=steps {
        for nb in 0..=(steps - na) {
            let nc = steps - na - nb;
            let (a2, b2, c2) = (
                na as f64 / steps as f64,
                nb as f64 / steps as f64,
                nc as f64 / steps as f64,
            );
            let (a, b, c) = (a2.sqrt(), b2.sqrt(), c2.sqrt());
            if w_class(a, b, c).is_err() {
                continue;
            }
            let cam = ca_min(a, b, c);
            let (c12, _c13, c23) = tribox::quantum::concurrences_w_class(a, b, c);
            let rho = w_class(a, b, c).unwrap();
            let bg = born_box(&rho, &settings_sd_xz()).unwrap();
            let bq = born_box(&rho, &settings_md_xz()).unwrap();
            let g = svetlichny_discord(&bg);
            let q = mermin_discord(&bq);
            worst = worst.max((g - 4.0 * SQRT2 * cam).abs());
            worst = worst.max((q - 4.0 * cam).abs());
            let vanish = c12 * c23 == 0.0;
            if vanish != (g <= 1e-7) || vanish != (q <= 1e-7) {
                zero_law_ok = false;
            }
        }
    }
    let pass = worst <= 1e-7 && zero_law_ok;
    report(
        "5 W-class sweeps",
        pass,
        format!("max law error {worst:.2e}, zero-iff-C12C23 {zero_law_ok}"),
    );
    assert!(pass);
}

#[test]
fn c06_werner_sweep() {
    let sv = svetlichny_box(0, 0, 0, 0);
    let m0 = mermin_box_mm(0).unwrap();
    let noise = white_noise();
    let mut worst_law: f64 = 0.0;
    let mut worst_box: f64 = 0.0;
    for step in 0..=20 {
        let p = step as f64 / 20.0;
        let rho = werner(p).unwrap();
        let bg = born_box(&rho, &settings_sd_xy()).unwrap();
        let bq = born_box(&rho, &settings_md_xy()).unwrap();
        worst_law = worst_law.max((svetlichny_discord(&bg) - 4.0 * SQRT2 * p).abs());
        worst_law = worst_law.max((mermin_discord(&bq) - 4.0 * p).abs());
        let iso_sv = mix(&[(p / SQRT2, &sv), (1.0 - p / SQRT2, &noise)]).unwrap();
        let iso_m = mix(&[(p, &m0), (1.0 - p, &noise)]).unwrap();
        worst_box = worst_box.max(bg.distance(&iso_sv)).max(bq.distance(&iso_m));
    }
    let pass = worst_law <= 1e-9 && worst_box <= 1e-9;
    report(
        "6 Werner sweep",
        pass,
        format!("law error {worst_law:.2e}, isotropic-box distance {worst_box:.2e}"),
    );
    assert!(pass);
}

#[test]
fn c07_class99() {
    let exact5 = class99_value(&class8_box());
    let ghz_opt = born_box(
        &ghz(),
        &settings_class99(std::f64::consts::FRAC_PI_4).unwrap(),
    )
    .unwrap();
    let bound = class99_value(&ghz_opt);
    let mut worst_sweep: f64 = 0.0;
    for ti in 1..=12 {
        let theta = ti as f64 / 12.0 * std::f64::consts::FRAC_PI_4;
        let rho = ghz_class(theta, std::f64::consts::FRAC_PI_2).unwrap();
        let b = born_box(&rho, &settings_class99(theta).unwrap()).unwrap();
        let expect = 1.0 + 2.0 * (1.0 + (2.0 * theta).sin().powi(2)).sqrt();
        worst_sweep = worst_sweep.max((class99_value(&b) - expect).abs());
    }
    // Convex split of the optimal GHZ box into the class-8 box and the local
    // box generated by the classically correlated A-C state.
    let p_l = born_box(
        &classically_correlated_ac(),
        &settings_class99(std::f64::consts::FRAC_PI_4).unwrap(),
    )
    .unwrap();
    let c8 = class8_box();
    let w = 1.0 / SQRT2;
    let recombines = verify_decomposition(&ghz_opt, &[(w, &c8), (1.0 - w, &p_l)]).unwrap();
    let pass = exact5 == 5.0
        && (bound - (1.0 + 2.0 * SQRT2)).abs() <= 1e-9
        && worst_sweep <= 1e-7
        && recombines;
    report(
        "7 class-99",
        pass,
        format!(
            "class8 = {exact5}, optimal GHZ = {bound:.12} (target {:.12}), sweep error {worst_sweep:.2e}, split recombines: {recombines}",
            1.0 + 2.0 * SQRT2
        ),
    );
    assert!(pass);
}

#[test]
fn c08_monogamy() {
    let r = VertexSet::r();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let terms = rng.gen_range(2..8);
        let b = random_r_mixture(&mut rng, &r, terms);
        let (lhs, holds) = monogamy_check(&b);
        worst = worst.max(lhs);
        assert!(holds, "monogamy violated: {lhs}");
    }
    let (sv_lhs, _) = monogamy_check(&svetlichny_box(0, 1, 1, 0));
    let (mm_lhs, _) = monogamy_check(&mermin_box_mm(5).unwrap());
    // The interpolating-settings family: G = 8 sqrt(1-p), Q = 4(sqrt p -
    // sqrt(1-p)), so the monogamy combination equals 8 sqrt(p).
    let mut worst_family: f64 = 0.0;
    for step in 0..=10 {
        let p = 0.5 + 0.05 * step as f64;
        let b = born_box(&ghz(), &settings_mixed_p(p).unwrap()).unwrap();
        let g = svetlichny_discord(&b);
        let q = mermin_discord(&b);
        worst_family = worst_family
            .max((g - 8.0 * (1.0 - p).sqrt()).abs())
            .max((q - 4.0 * (p.sqrt() - (1.0 - p).sqrt())).abs())
            .max((g + 2.0 * q - 8.0 * p.sqrt()).abs());
    }
    // Spot-check the canonical decomposition of the family at p = 0.64:
    // weights (0.6, 0.2) on the Svetlichny and Mermin components and a white
    // noise remainder.
    let b64 = born_box(&ghz(), &settings_mixed_p(0.64).unwrap()).unwrap();
    let dec = three_decomposition(&b64).unwrap();
    let dec_ok = (dec.mu - 0.6).abs() <= 1e-9
        && (dec.nu - 0.2).abs() <= 1e-9
        && dec.svet_tag == (0, 0, 0, 0)
        && dec.residual.distance(&white_noise()) <= 1e-9;
    let pass = worst <= 8.0 + 1e-9
        && (sv_lhs - 8.0).abs() <= 1e-9
        && (mm_lhs - 8.0).abs() <= 1e-9
        && worst_family <= 1e-7
        && dec_ok;
    report(
        "8 monogamy",
        pass,
        format!(
            "max G+2Q over 1e4 mixtures = {worst:.9}, boundary cases ({sv_lhs}, {mm_lhs}), interpolating-family error {worst_family:.2e}, p=0.64 split (mu={:.6}, nu={:.6})",
            dec.mu, dec.nu
        ),
    );
    assert!(pass);
}

#[test]
fn c09_membership_oracle() {
    let sets = [VertexSet::l(), VertexSet::l2(), VertexSet::r()];
    let mut rng = ChaCha8Rng::seed_from_u64(7177);
    for set in &sets {
        for _ in 0..1000 {
            let terms = rng.gen_range(2..10);
            let b = random_r_mixture(&mut rng, set, terms);
            let res = membership(&b, set).unwrap();
            assert!(res.inside, "known mixture certified outside {:?}", set.name);
        }
    }
    // Nesting on a sample of the L mixtures.
    for _ in 0..25 {
        let b = random_r_mixture(&mut rng, &sets[0], 4);
        assert!(membership(&b, &sets[1]).unwrap().inside);
        assert!(membership(&b, &sets[2]).unwrap().inside);
    }
    let l2 = &sets[1];
    for v in 0..16usize {
        let sv = svetlichny_box(
            (v >> 3) as u8 & 1,
            (v >> 2) as u8 & 1,
            (v >> 1) as u8 & 1,
            v as u8 & 1,
        );
        let res = membership(&sv, l2).unwrap();
        assert!(!res.inside, "Svetlichny box certified inside L2");
        assert!(res.violation.is_some());
    }
    // GHZ+W at the interpolation settings stays in the three-way nonlocal
    // region of R for a dominant GHZ component; at the xz settings a W-heavy
    // mixture escapes R.
    let inside = born_box(&ghz_w(0.8, 0.2).unwrap(), &settings_sd_xy()).unwrap();
    let r_res = membership(&inside, &sets[2]).unwrap();
    let l2_res = membership(&inside, l2).unwrap();
    let outside = born_box(&ghz_w(0.02, 0.98).unwrap(), &settings_sd_xz()).unwrap();
    let out_res = membership(&outside, &sets[2]).unwrap();
    let pass = r_res.inside && !l2_res.inside && !out_res.inside;
    report(
        "9 membership oracle",
        pass,
        format!(
            "3000 known mixtures inside; Svetlichny boxes outside L2; GHZ+W: in-R {} out-L2 {} / escapes R {}",
            r_res.inside, !l2_res.inside, !out_res.inside
        ),
    );
    assert!(pass);
}

#[test]
fn c10_cq_qc_null() {
    // Faithful run of the null test. It fails: zero discord for all
    // measurements holds for single-block (product) states but not for
    // mixtures of blocks, whose boxes can carry an irreducible
    // Svetlichny-box component (they are certified inside the Svetlichny-box
    // polytope with G of order 0.1). The assertion is kept as stated rather
    // than weakened; see the decisions ledger for the analysis.
    let kinds = [CqQcKind::Cq, CqQcKind::Qc12_3, CqQcKind::Qc13_2];
    let mut worst: f64 = 0.0;
    let mut worst_seed = 0;
    for sample_idx in 0..200u64 {
        let kind = kinds[(sample_idx % 3) as usize];
        let rho = sample_cq_qc(kind, sample_idx);
        for s in 0..20u64 {
            let settings = random_settings(sample_idx * 100 + s, false);
            let b = born_box(&rho, &settings).unwrap();
            let g = svetlichny_discord(&b);
            let q = mermin_discord(&b);
            if g.max(q) > worst {
                worst = g.max(q);
                worst_seed = sample_idx;
            }
        }
    }
    let pass = worst <= 1e-7;
    report(
        "10 CQ/QC null",
        pass,
        format!("max G/Q over 200x20 samples = {worst:.6} (worst state seed {worst_seed}); the null holds only for single-block states"),
    );
    assert!(
        pass,
        "mixed CQ/QC states have nonzero discord (max {worst:.6})"
    );
}

#[test]
fn c11_biseparable_and_mixtures() {
    let b = born_box(&bisep_w(), &settings_sd_xz()).unwrap();
    let g_xz = svetlichny_discord(&b);
    let target = 4.0 * SQRT2 / 3.0;
    let mut worst_xy: f64 = 0.0;
    for s in 0..50u64 {
        let settings = random_settings(31_000 + s, true);
        let bb = born_box(&bisep_w(), &settings).unwrap();
        worst_xy = worst_xy
            .max(svetlichny_discord(&bb))
            .max(mermin_discord(&bb));
    }
    let mut worst_xy_law: f64 = 0.0;
    let mut worst_xz_law: f64 = 0.0;
    for step in 0..=20 {
        let p = step as f64 / 20.0;
        let q = 1.0 - p;
        let rho = ghz_w(p, q).unwrap();
        let bxy = born_box(&rho, &settings_sd_xy()).unwrap();
        worst_xy_law = worst_xy_law.max((svetlichny_discord(&bxy) - 4.0 * SQRT2 * p).abs());
        let bxz = born_box(&rho, &settings_sd_xz()).unwrap();
        let g = svetlichny_discord(&bxz);
        // The W-component law G = 8 sqrt(2) q / 3 is exact on the outer
        // regimes p <= 1/4 and p >= 3/4; in between another nested
        // difference dips below it and the value follows the minimum form.
        let law = (8.0 * SQRT2 * q / 3.0).min(SQRT2 * (2.0 * p - 10.0 * q / 3.0).abs());
        worst_xz_law = worst_xz_law.max((g - law).abs());
        if !(0.25..0.75).contains(&p) {
            worst_xz_law = worst_xz_law.max((g - 8.0 * SQRT2 * q / 3.0).abs());
        }
    }
    let pass = (g_xz - target).abs() <= 1e-7
        && worst_xy <= 1e-7
        && worst_xy_law <= 1e-7
        && worst_xz_law <= 1e-7;
    report(
        "11 biseparable and mixtures",
        pass,
        format!(
            "bisep G = {g_xz:.9} (target {target:.9}), xy-null max {worst_xy:.2e}, GHZ+W law errors ({worst_xy_law:.2e}, {worst_xz_law:.2e})"
        ),
    );
    assert!(pass);
}

#[test]
fn c12_appendix_four_separable_state() {
    let b = born_box_blocked(
        &tribox::quantum::sixqubit_4sep(),
        &BlockStrategy::sixqubit_xy(),
    )
    .unwrap();
    let c = b.correlators();
    let mixed_marginals = c
        .singles
        .iter()
        .chain(c.pairs.iter())
        .all(|v| v.abs() <= 1e-9);
    let mut violations = 0;
    for t in 0..16u8 {
        let v = mermin_value(&b, (t >> 3) & 1, (t >> 2) & 1, (t >> 1) & 1, t & 1);
        if v > 2.0 + 1e-9 {
            violations += 1;
            assert!((v - 4.0).abs() <= 1e-9);
        }
    }
    let matches_m0 = b.distance(&mermin_box_mm(0).unwrap());
    let pass = mixed_marginals && violations == 1 && matches_m0 <= 1e-9;
    report(
        "12a appendix 4-separable",
        pass,
        format!(
            "nonsignaling box, {violations} maximal Mermin violation(s), marginals mixed: {mixed_marginals}, distance to the paradox box {matches_m0:.2e}"
        ),
    );
    assert!(pass);
}

#[test]
fn c12_appendix_partial_state() {
    // Faithful run: the partial state should yield a Mermin box with a
    // nonmaximally mixed marginal. It cannot: with the pair marginal of one
    // block pure, the block factorizes and the box signals between Alice's
    // inputs. The construction is rejected by nonsignaling validation and
    // this test records the unattained claim; see the module notes above.
    let result = born_box_blocked(
        &tribox::quantum::sixqubit_partial(),
        &BlockStrategy::sixqubit_xy(),
    );
    let detail = match &result {
        Ok(b) => format!("produced a box with Q = {:.6}", mermin_discord(b)),
        Err(e) => format!("rejected: {e}"),
    };
    let pass = matches!(&result, Ok(b) if mermin_discord(b) > 4.0 - 1e-9);
    report("12b appendix partial state", pass, detail);
    assert!(
        pass,
        "partial six-qubit state cannot yield a nonmaximally-mixed-marginal Mermin box"
    );
}

#[test]
fn c13_invariance() {
    let r = VertexSet::r();
    let mut rng = ChaCha8Rng::seed_from_u64(4096);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let terms = rng.gen_range(2..7);
        let b = random_r_mixture(&mut rng, &r, terms);
        let g = svetlichny_discord(&b);
        let q = mermin_discord(&b);
        let mut relabel = || PartyRelabel {
            input_swap: rng.gen(),
            output_flip: [rng.gen(), rng.gen()],
        };
        let op = LocalReversibleOp {
            parties: [relabel(), relabel(), relabel()],
            perm: None,
        };
        let tb = apply_lro(&b, &op);
        worst = worst
            .max((svetlichny_discord(&tb) - g).abs())
            .max((mermin_discord(&tb) - q).abs());
        for perm in PartyPerm::ALL {
            let pb = permute_parties(&b, perm);
            worst = worst
                .max((svetlichny_discord(&pb) - g).abs())
                .max((mermin_discord(&pb) - q).abs());
        }
    }
    let pass = worst <= 1e-9;
    report(
        "13 invariance",
        pass,
        format!("max |ΔG|,|ΔQ| = {worst:.2e}"),
    );
    assert!(pass);
}
