//! Acceptance run. Prints one PASS/FAIL line per criterion; set
//! `ACCEPTANCE_STRICT=1` to exit nonzero when any line fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rootscan::constancy::audit::{clause_counts, closed_form_check, coherence, overlaps, scan_flag, theorem_fixtures};
use rootscan::constancy::{
    classify, classify_j0, classify_j1728, decide, paper_tables, ClauseTables, ConstancyVerdict, LemmaId, Surface,
    SurfaceJ0, SurfaceJ1728,
};
use rootscan::geometry::{section_samples, EllipticSurfaceModel, KodairaType};
use rootscan::local_root::{global_root, Family, RootMode, Sign};
use rootscan::poly::{parse_poly, IntPoly};
use rootscan::scan::{find_both_signs, find_counterexample, scan, CrossValidation, ScanOptions, ScanReport};
use rootscan::weierstrass::{LutzNagell, TorsionOrder};

const SEED: u64 = 0x5eed_2024;

const WORKED_HEIGHT: u32 = 50;
const WORKED_BUDGET: Duration = Duration::from_secs(10);

const SWEEP_SAMPLES: usize = 200;
const SWEEP_AB: i128 = 500;
const SWEEP_ABC: i128 = 50;
const SOUNDNESS_HEIGHT: u32 = 100;
const WITNESS_HEIGHT: u32 = 200;
const WITNESS_RATE: f64 = 0.90;
const SWEEP_BUDGET: Duration = Duration::from_secs(300);

const ORACLE_LIMIT: i128 = 100_000;
const ORACLE_BUDGET: Duration = Duration::from_secs(120);

const TWIST_PAIRS: usize = 1000;

const SECTION_SAMPLES: i64 = 20;
const SECTION_MIN_INFINITE: usize = 18;
const SECTION_BUDGET: Duration = Duration::from_secs(30);

const AUDIT_BUDGET: Duration = Duration::from_secs(60);

/// Clause counts as enumerated in the lemma statements.
const PRINTED_COUNTS: [(LemmaId, usize); 4] =
    [(LemmaId::J0W2, 13), (LemmaId::J0W3, 76), (LemmaId::J1728W2, 25), (LemmaId::J1728W3, 2)];

struct Report {
    failed: Vec<String>,
}

impl Report {
    fn line(&mut self, id: &str, pass: bool, detail: String) {
        println!("{} criterion {id}: {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            self.failed.push(id.to_string());
        }
    }
}

fn j0(a: i128, b: i128) -> Surface {
    Surface::J0(SurfaceJ0::new(a, b).unwrap())
}

fn j1728(a: i128, b: i128, c: i128) -> Surface {
    Surface::J1728(SurfaceJ1728::new(a, b, c).unwrap())
}

fn census(s: &Surface, h: u32) -> ScanReport {
    scan(s, h, ScanOptions::default()).unwrap()
}

fn show(v: &ConstancyVerdict) -> String {
    match v.constant_sign() {
        Some(s) => format!("Constant({s})"),
        None => "Varies".to_string(),
    }
}

fn within(t: Instant, budget: Duration) -> (bool, String) {
    let e = t.elapsed();
    (e <= budget, format!("{:.2}s of {}s", e.as_secs_f64(), budget.as_secs()))
}

/// `classify` must give `Constant(expected)` and the census only `expected`.
fn worked_j0(r: &mut Report, id: &str, a: i128, b: i128, expected: Sign) {
    let t = Instant::now();
    let v = classify_j0(a, b).unwrap();
    let c = census(&j0(a, b), WORKED_HEIGHT);
    let (fast, time) = within(t, WORKED_BUDGET);
    let verdict_ok = v.constant_sign() == Some(expected);
    let wrong = if expected == Sign::Plus { c.wminus } else { c.wplus };
    let witness = c.witness(-expected).map_or(String::new(), |w| format!(", first {} at t = {}/{}", w.sign, w.m, w.n));
    r.line(
        id,
        verdict_ok && wrong == 0 && fast,
        format!(
            "j0 (a, b) = ({a}, {b}): classify {} (want Constant({expected})); H = {WORKED_HEIGHT}: W+ = {}, W- = {}{witness}; {time}",
            show(&v),
            c.wplus,
            c.wminus
        ),
    );
}

fn criterion_4(r: &mut Report) {
    let mut pass = true;
    let mut parts = Vec::new();
    for (c, expected) in [(7, Sign::Minus), (11, Sign::Plus)] {
        let t = Instant::now();
        let s = j1728(3, 5, c);
        let rep = census(&s, WORKED_HEIGHT);
        let (fast, time) = within(t, WORKED_BUDGET);
        let wrong = if expected == Sign::Plus { rep.wminus } else { rep.wplus };
        pass &= wrong == 0 && fast;
        let literal = classify(&s, paper_tables()).unwrap();
        let flag = scan_flag(&s, WORKED_HEIGHT, paper_tables()).unwrap();
        let flagged = match &flag.outcome {
            CrossValidation::SoundnessViolation { .. } => "flagged",
            _ => "not flagged",
        };
        parts.push(format!(
            "(3, 5, {c}) want all {expected}: W+ = {}, W- = {}, literal {} ({flagged}), {time}",
            rep.wplus,
            rep.wminus,
            show(&literal)
        ));
    }
    r.line("4", pass, format!("H = {WORKED_HEIGHT}; {}", parts.join("; ")));
}

fn nonzero(rng: &mut StdRng, bound: i128) -> i128 {
    loop {
        let x = rng.gen_range(-bound..=bound);
        if x != 0 {
            return x;
        }
    }
}

fn sweep_surfaces(rng: &mut StdRng) -> Vec<Surface> {
    let mut out = Vec::new();
    while out.len() < SWEEP_SAMPLES {
        out.push(j0(nonzero(rng, SWEEP_AB), nonzero(rng, SWEEP_AB)));
    }
    while out.len() < 2 * SWEEP_SAMPLES {
        let (a, b, c) = (nonzero(rng, SWEEP_ABC), nonzero(rng, SWEEP_ABC), nonzero(rng, SWEEP_ABC));
        if num_integer::gcd(a, b) == 1 {
            out.push(j1728(a, b, c));
        }
    }
    out
}

struct Sweep {
    constant: usize,
    violations: Vec<String>,
    varies: usize,
    witnessed: usize,
}

fn sweep(surfaces: &[Surface], verdict: impl Fn(&Surface) -> ConstancyVerdict) -> Sweep {
    let mut s = Sweep { constant: 0, violations: Vec::new(), varies: 0, witnessed: 0 };
    for surface in surfaces {
        let v = verdict(surface);
        match v.constant_sign() {
            Some(sign) => {
                s.constant += 1;
                if let Some(w) = find_counterexample(surface, sign, SOUNDNESS_HEIGHT).unwrap() {
                    s.violations.push(format!("{surface} claims {sign}, t = {}/{} has {}", w.m, w.n, w.sign));
                }
            }
            None => {
                s.varies += 1;
                if let (Some(_), Some(_)) = find_both_signs(surface, WITNESS_HEIGHT).unwrap() {
                    s.witnessed += 1;
                }
            }
        }
    }
    s
}

fn sweep_line(r: &mut Report, id: &str, label: &str, s: &Sweep, t: Instant) {
    let rate = if s.varies == 0 { 1.0 } else { s.witnessed as f64 / s.varies as f64 };
    let (fast, time) = within(t, SWEEP_BUDGET);
    let first = s.violations.first().map_or(String::new(), |v| format!(" (first: {v})"));
    r.line(
        id,
        s.violations.is_empty() && rate >= WITNESS_RATE && fast,
        format!(
            "{label}: {} Constant verdicts, {} contradicted at H = {SOUNDNESS_HEIGHT}{first}; {} of {} Varies verdicts witnessed by H = {WITNESS_HEIGHT} ({:.1}%, need {:.0}%); {time}",
            s.constant,
            s.violations.len(),
            s.witnessed,
            s.varies,
            100.0 * rate,
            100.0 * WITNESS_RATE
        ),
    );
}

fn criterion_5(r: &mut Report) {
    let mut rng = StdRng::seed_from_u64(SEED);
    let surfaces = sweep_surfaces(&mut rng);
    let t = Instant::now();
    let literal = sweep(&surfaces, |s| classify(s, paper_tables()).unwrap());
    sweep_line(r, "5", "lemma-literal classifier", &literal, t);
    let t = Instant::now();
    let sound = sweep(&surfaces, |s| decide(s).unwrap());
    sweep_line(r, "5b", "local decider", &sound, t);
}

fn criterion_6(r: &mut Report) {
    let t = Instant::now();
    let c1728 = closed_form_check(Family::J1728, ORACLE_LIMIT).unwrap();
    let c0 = closed_form_check(Family::J0, ORACLE_LIMIT).unwrap();
    let (fast, time) = within(t, ORACLE_BUDGET);
    r.line(
        "6",
        c1728.disagreements == 0 && c0.in_domain == 0 && fast,
        format!(
            "0 < |delta| <= {ORACLE_LIMIT}: j1728 {} disagreements of {}; j0 {} disagreements in domain, {} outside (e.g. {:?}); {time}",
            c1728.disagreements,
            c1728.checked,
            c0.in_domain,
            c0.disagreements - c0.in_domain,
            &c0.examples[..c0.examples.len().min(3)]
        ),
    );
}

fn criterion_7(r: &mut Report) {
    let mut rng = StdRng::seed_from_u64(SEED ^ 7);
    let mut bad = Vec::new();
    for i in 0..TWIST_PAIRS {
        let d = nonzero(&mut rng, 1_000_000);
        let s: i128 = rng.gen_range(1..=60);
        let (fam, twisted) = if i % 2 == 0 { (Family::J0, d * s.pow(6)) } else { (Family::J1728, d * s.pow(4)) };
        let w = |x| global_root(x, fam, RootMode::PerPrime).unwrap().sign;
        if w(d) != w(twisted) {
            bad.push((fam, d, s));
        }
    }
    r.line("7", bad.is_empty(), format!("{TWIST_PAIRS} pairs (delta, s): {} with W(delta) != W(twist) {:?}", bad.len(), bad.first()));
}

fn criterion_8(r: &mut Report) {
    let t = Instant::now();
    let generic = section_samples(&parse_poly("T^4 + T + 1").unwrap(), SECTION_SAMPLES).unwrap();
    let infinite = generic.iter().filter(|s| s.lutz_nagell == LutzNagell::InfiniteOrder).count();
    let special = section_samples(&parse_poly("T^4 + 1").unwrap(), SECTION_SAMPLES).unwrap();
    let two = special.iter().filter(|s| s.order == TorsionOrder::Order(2)).count();
    let (fast, time) = within(t, SECTION_BUDGET);
    r.line(
        "8",
        infinite >= SECTION_MIN_INFINITE && two == special.len() && fast,
        format!(
            "T^4 + T + 1: {infinite} of {} samples of infinite order (need {SECTION_MIN_INFINITE}); T^4 + 1: {two} of {} of order 2; {time}",
            generic.len(),
            special.len()
        ),
    );
}

fn random_poly(rng: &mut StdRng, deg: usize) -> IntPoly {
    IntPoly::from_coeffs((0..=deg).map(|_| rng.gen_range(-5i64..=5)).collect())
}

fn criterion_9(r: &mut Report) {
    use KodairaType::*;
    let mut rng = StdRng::seed_from_u64(SEED ^ 9);
    let forms: [(&str, &[KodairaType]); 3] =
        [("twist", &[I0Star]), ("j1728", &[I0Star, III, IIIStar]), ("j0", &[I0Star, II, IIStar, IV, IVStar])];
    let mut seen = [0usize; 3];
    let mut stray = Vec::new();
    let mut euler_bad = Vec::new();
    let mut minimal_models = 0;
    for _ in 0..300 {
        let f = random_poly(&mut rng, 2);
        let (c4, c6) = (BigInt::from(rng.gen_range(1i64..=5)), BigInt::from(rng.gen_range(-5i64..=5)));
        let models = [
            EllipticSurfaceModel::new(f.mul(&f).scale(&c4), f.mul(&f).mul(&f).scale(&c6)),
            EllipticSurfaceModel::new(random_poly(&mut rng, 4), IntPoly::zero(6)),
            EllipticSurfaceModel::new(IntPoly::zero(4), random_poly(&mut rng, 6)),
        ];
        for (i, m) in models.into_iter().enumerate() {
            let Ok(m) = m else { continue };
            let config = m.fiber_configuration().unwrap();
            for (p, k) in &config {
                seen[i] += 1;
                if !forms[i].1.contains(k) {
                    stray.push(format!("{} fiber {k} at {p}", forms[i].0));
                }
            }
            let minimal = m.places().unwrap().iter().all(|p| {
                let (va, vb, _) = m.valuations(p).unwrap();
                !(va.is_none_or(|v| v >= 4) && vb.is_none_or(|v| v >= 6))
            });
            if minimal && m.is_rational() {
                minimal_models += 1;
                let e = m.euler_sum().unwrap();
                if e != 12 {
                    euler_bad.push(format!("A = {}, B = {}: {e}", m.a(), m.b()));
                }
            }
        }
    }
    let dp = |a: &str, b: &str| {
        EllipticSurfaceModel::new(parse_poly(a).unwrap(), parse_poly(b).unwrap()).unwrap().is_del_pezzo_degree1().unwrap()
    };
    let dp5 = dp("0", "T^5 - T + 1");
    let dp6 = dp("0", "T^6 + T + 1");
    let not_dp = !dp("T^2", "T^3");
    r.line(
        "9",
        stray.is_empty() && euler_bad.is_empty() && seen.iter().all(|&n| n > 0) && dp5 && dp6 && not_dp,
        format!(
            "fibers seen (twist, j1728, j0) = {seen:?}, {} outside their form {:?}; Euler sum 12 on {} of {minimal_models} minimal rational models; del Pezzo deg 5 {dp5}, deg 6 {dp6}, T^2 x + T^3 rejected {not_dp}",
            stray.len(),
            stray.first(),
            minimal_models - euler_bad.len()
        ),
    );
}

fn criterion_10(r: &mut Report, t: &ClauseTables) {
    let start = Instant::now();
    let counts = clause_counts(t);
    let pinned = PRINTED_COUNTS.iter().all(|&(id, n)| counts.iter().any(|c| c.lemma == id && c.printed == n));
    let counts_ok = pinned && counts.iter().all(|c| c.matches());
    let mut overlap_total = 0;
    let mut per = Vec::new();
    for id in LemmaId::ALL {
        let o = overlaps(t.get(id));
        let opposite = o.iter().filter(|x| !x.same_value).count();
        overlap_total += o.len();
        per.push(format!("{id} {} ({} opposite)", o.len(), opposite));
    }
    let (fast, time) = within(start, AUDIT_BUDGET);
    let shown: Vec<String> = counts.iter().map(|c| format!("{} {}/{}", c.lemma, c.encoded, c.printed)).collect();
    r.line(
        "10",
        counts_ok && overlap_total == 0 && fast,
        format!(
            "counts (encoded/printed) {}: {}; overlapping clause pairs {}: {}; {time}",
            shown.join(", "),
            if counts_ok { "match" } else { "MISMATCH" },
            overlap_total,
            per.join(", ")
        ),
    );
}

fn coherence_line(r: &mut Report, t: &ClauseTables) {
    let mut parts = Vec::new();
    let mut pass = true;
    for fx in theorem_fixtures() {
        let c = coherence(&fx, t);
        pass &= c.mismatches == 0;
        parts.push(format!(
            "{} vs {}: {} of {} points differ ({} with values negated)",
            c.fixture, c.lemma, c.mismatches, c.points, c.flipped_mismatches
        ));
    }
    r.line("coherence", pass, parts.join("; "));
}

fn main() {
    let mut r = Report { failed: Vec::new() };
    let tables = ClauseTables::paper();
    worked_j0(&mut r, "1", 1053, 39, Sign::Plus);
    worked_j0(&mut r, "2", 405, 15, Sign::Minus);
    worked_j0(&mut r, "3", 27, 16, Sign::Plus);
    criterion_4(&mut r);
    criterion_5(&mut r);
    criterion_6(&mut r);
    criterion_7(&mut r);
    criterion_8(&mut r);
    criterion_9(&mut r);
    criterion_10(&mut r, &tables);
    coherence_line(&mut r, &tables);
    // the worked j = 1728 examples under the literal classifier, for the record
    for c in [7, 11] {
        println!("note: classify_j1728(3, 5, {c}) = {}", show(&classify_j1728(3, 5, c).unwrap()));
    }
    if r.failed.is_empty() {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: failing {}", r.failed.join(", "));
        if std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
            std::process::exit(1);
        }
    }
}
