//! Acceptance suite: one line per criterion.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use toro::characters::*;
use toro::field::Monomial;
use toro::fock::FockModule;
use toro::macmahon::*;
use toro::partitions::*;
use toro::plane::Box3;
use toro::rep::*;
use toro::roots::*;
use toro::tensor::*;
use toro::vector::VectorRep;

type Outcome = Result<String, String>;

fn p(s: &str) -> Partition {
    Partition::parse(s).unwrap()
}

fn ctx(n: usize, k: usize) -> ColorContext {
    ColorContext::new(n, k as i64).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort();
    v
}

fn corners_golden() -> Outcome {
    let lam = p("7,4,2,2");
    let want = [(0, vec![0, 1, 2], vec![0, 0, 1, 2]), (2, vec![0, 1, 2], vec![0, 1, 2, 2])];
    for (k, cv, cc) in want {
        let c = ctx(3, k);
        let co = corners(&lam);
        ensure(co.convex == vec![(1, 7), (2, 4), (4, 2)], || format!("convex positions {:?}", co.convex))?;
        ensure(co.concave == vec![(1, 8), (2, 5), (3, 3), (5, 1)], || format!("concave positions {:?}", co.concave))?;
        let gv = sorted(co.convex.iter().map(|&(x, y)| c.color(x, y)).collect());
        let gc = sorted(co.concave.iter().map(|&(x, y)| c.color(x, y)).collect());
        ensure(gv == cv && gc == cc, || format!("k={k}: convex {gv:?} concave {gc:?}"))?;
    }
    Ok("k=0 and k=2 match".into())
}

fn k_formula() -> Outcome {
    let mut count = 0;
    for n in 3..=5 {
        for k in 0..n {
            let f = FockModule::new(ctx(n, k), Monomial::ONE);
            for lam in partitions_up_to(12) {
                for i in 0..n {
                    ensure(f.k_row(i, &lam) == f.k_corner(i, &lam), || format!("n={n} k={k} i={i} {lam}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} eigenvalues agree"))
}

fn relations() -> Outcome {
    let mut cases: Vec<(String, ModuleHandle, usize)> = Vec::new();
    for n in [3, 4] {
        for k in 0..n {
            cases.push((format!("V n={n} k={k}"), Arc::new(VectorRep::new(ctx(n, k), Monomial::ONE)), 6));
            cases.push((format!("Vbar n={n} k={k}"), Arc::new(VectorRep::barred(ctx(n, k), Monomial::ONE)), 6));
            let d = if n == 3 { 8 } else { 6 };
            cases.push((format!("F n={n} k={k}"), Arc::new(FockModule::new(ctx(n, k), Monomial::ONE)), d));
        }
    }
    cases.push(("N_(1),(1)".into(), Arc::new(n_module(&p("1"), &p("1"), 0, 3).unwrap()), 4));
    cases.push(("vacuum".into(), Arc::new(vacuum_macmahon(0, 3, KSpec::Symbolic).unwrap()), 5));
    cases.push(("gamma (3,2,1)".into(), Arc::new(gamma_macmahon(0, 3, KSpec::Symbolic, &p("3,2,1")).unwrap()), 4));
    let general = general_macmahon(&p("3,1"), &p("4,3,1,1"), &p("3,2,1"), 0, 3, KSpec::Symbolic).unwrap();
    cases.push(("general (3,1),(4,3,1,1),(3,2,1)".into(), Arc::new(general), 3));
    cases.push(("G (2,1,1),(2,2,2)".into(), Arc::new(g_module(&p("2,1,1"), &p("2,2,2"), 0, 3).unwrap()), 4));
    let mut total = 0;
    for (name, h, d) in cases {
        let rep = check_relations(&h, d);
        total += rep.checks.values().sum::<usize>();
        ensure(rep.passed(), || format!("{name}: {:?} {:?}", rep.failures.first(), rep.ill_defined.first()))?;
    }
    Ok(format!("{total} relation instances"))
}

fn wedge() -> Outcome {
    let bad = fock_vs_wedge(3, 0, 8, 6).map_err(|e| e.to_string())?;
    ensure(bad.is_empty(), || format!("{} discrepancies, first {}", bad.len(), bad[0]))?;
    Ok("no discrepancies".into())
}

fn resonance() -> Outcome {
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    for k in 0..3 {
        for l in 0..3 {
            for a in -12..=12 {
                for b in -12..=12 {
                    let r = Monomial::new(0, a, b, 0);
                    let c = classify_vector_pair(3, k, l, r);
                    let bf = brute_force_vector_pair(3, k, l, r, 4).map_err(|e| e.to_string())?;
                    let ok = matches!(
                        (c, bf),
                        (VectorResonance::IllDefined { .. }, BruteOutcome::IllDefined)
                            | (VectorResonance::Submodule { .. }, BruteOutcome::HasVanishing)
                            | (VectorResonance::Irreducible, BruteOutcome::Generic)
                    );
                    ensure(ok, || format!("k={k} l={l} ratio {r}: {c:?} vs {bf:?}"))?;
                    *tally.entry(format!("{bf:?}")).or_insert(0) += 1;
                }
            }
        }
    }
    Ok(format!("{tally:?}"))
}

fn levels() -> Outcome {
    let lv = |h: &dyn Module| level_of(h).map_err(|e| e.to_string());
    let q = Monomial::q();
    ensure(lv(&VectorRep::new(ctx(3, 0), Monomial::ONE))? == Monomial::ONE, || "vector".into())?;
    ensure(lv(&FockModule::new(ctx(3, 0), Monomial::ONE))? == q, || "fock".into())?;
    let nm = n_module(&p("2,1"), &p("1"), 0, 3).unwrap();
    ensure(lv(&nm)? == q.pow(nm.prefix_len() as i32), || "N".into())?;
    ensure(lv(&vacuum_macmahon(1, 3, KSpec::Symbolic).unwrap())? == Monomial::k(), || "vacuum".into())?;
    let gen = general_macmahon(&p("3,1"), &p("4,3,1,1"), &p("3,2,1"), 0, 3, KSpec::Symbolic).unwrap();
    ensure(lv(&gen)? == Monomial::k(), || "general".into())?;
    let desc = MacmahonDescriptor {
        kind: MacmahonKind::General { alpha: p("1"), beta: p("1"), gamma: Partition::empty() },
        n: 3,
        k: 0,
        kspec: KSpec::Symbolic,
    };
    let b = Box3::new(1, 1, 3);
    let h = special_k_quotient(&desc, b, 0).unwrap();
    let want = (Monomial::q3() * Monomial::q1() * Monomial::q2().pow(3)).sqrt().unwrap();
    ensure(lv(&h)? == want, || "special K".into())?;
    let g = g_module(&p("2,1,1"), &p("2,2,2"), 0, 3).unwrap();
    ensure(lv(&g)? == Monomial::q1().pow(3).sqrt().unwrap(), || "G".into())?;
    let vac = |k| MacmahonDescriptor { kind: MacmahonKind::Vacuum, n: 3, k, kspec: KSpec::Symbolic };
    let fs = vec![
        MultiFactor { desc: vac(0), anchor: None, b: Box3::new(1, 0, 0) },
        MultiFactor { desc: vac(1), anchor: None, b: Box3::new(0, 1, 0) },
    ];
    let mb = multi_macmahon_basis(&fs, 4).map_err(|e| e.to_string())?;
    ensure(mb.level == q.inv(), || format!("multi level {}", mb.level))?;
    // pairs of partitions
    let pairs = PowerSeries::pochhammer_inv(2, 4);
    ensure(PowerSeries::from_counts(&mb.character()) == pairs, || format!("multi basis {:?}", mb.character()))?;
    Ok("1, q, q^m, K, K, (q3 q1 q2^3)^(1/2), q1^(3/2), q^-1".into())
}

fn colorless_suite() -> Outcome {
    for (n, max) in [(3, 15), (4, 16)] {
        for g in partitions_up_to(max) {
            let cl = is_colorless(&g, n);
            for k in 0..n {
                let v = v_vec(&g, ctx(n, k));
                let nonneg = v.iter().all(|&x| x >= 0);
                ensure(nonneg == cl, || format!("n={n} k={k} {g}: v={v:?} colorless={cl}"))?;
                if cl {
                    let delta: Vec<i64> = (0..n).map(|i| i64::from(i == k)).collect();
                    ensure(v == delta, || format!("n={n} k={k} {g}: v={v:?}"))?;
                }
            }
            if g.size() <= 15 {
                ensure(cl == is_colorless(&g.conjugate(), n), || format!("conjugate of {g}"))?;
            }
        }
    }
    for n in [3, 4] {
        for k in 0..n {
            let c = ctx(n, k);
            for lam in partitions_up_to(10) {
                let v0 = v_vec(&lam, c);
                for j in lam.addable_rows() {
                    let mu = lam.add_box(j).unwrap();
                    let i = c.color(j as i64, lam.get(j as i64) as i64 + 1);
                    let v1 = v_vec(&mu, c);
                    for t in 0..n {
                        let abar = 2 * i64::from(t == i) - i64::from((t + 1) % n == i) - i64::from((i + 1) % n == t);
                        ensure(v1[t] - v0[t] == -abar, || format!("CCCV n={n} k={k} {lam} row {j}"))?;
                    }
                }
            }
        }
    }
    Ok("both directions, CCCV and conjugation".into())
}

fn orbit_suite() -> Outcome {
    let e = |x: RootError| x.to_string();
    for (n, want) in [(3, 6), (4, 24)] {
        let orbit = minimal_orbit(n).map_err(e)?;
        ensure(orbit.len() == want, || format!("n={n}: {} minimal partitions", orbit.len()))?;
        for nu in orbit.values() {
            ensure(is_minimal(nu, n), || format!("{nu} not minimal"))?;
            let s = sigma_perm(nu, n).map_err(e)?;
            let inv = s.inverse();
            for i in 1..n {
                if inv.apply(i) >= inv.apply(i + 1) {
                    continue;
                }
                let nu2 = orbit_step(nu, n, i).map_err(e)?;
                let s2 = sigma_perm(&nu2, n).map_err(e)?;
                ensure(s2 == Permutation::simple(n, i).compose(&s), || format!("step {nu} -> {nu2}"))?;
                ribeta_check(nu, n, i).map_err(e)?;
            }
        }
    }
    let fam = family(3, 18);
    let mut seen = BTreeMap::new();
    for nu in &fam {
        let d = beta_map_decompose(nu, 3).map_err(e)?;
        let back = beta_reconstruct(&beta_roots(nu, 3, 0), 3);
        ensure(back.as_ref() == Some(nu), || format!("round trip of {nu}"))?;
        ensure(seen.insert(beta_roots(nu, 3, 0), nu.clone()).is_none(), || format!("beta not injective at {nu}"))?;
        ensure(d.shifts.iter().all(|&m| m >= 0), || format!("negative shift at {nu}"))?;
    }
    Ok(format!("6 and 24 minimal, {} family members round-trip", fam.len()))
}

fn character_identity() -> Outcome {
    let cases = [("", "", 3), ("1", "", 3), ("2,1,1", "2,2,2", 3), ("", "", 4)];
    let mut convs = Vec::new();
    for (mu, nu, n) in cases {
        let (mu, nu) = (p(mu), p(nu));
        let g = g_module(&mu, &nu, 0, n).map_err(|e| e.to_string())?;
        let en = char_enumerate(&g, 10);
        let (ws, conv) = weyl_sum_char(&mu, &nu, n, 10, &en);
        let lw = lambda_weight(&mu, &nu, 0, n).map_err(|e| e.to_string())?;
        let kt = kt_char(&lw, 10).map_err(|e| e.to_string())?;
        ensure(en == ws, || format!("{mu},{nu}: enumerate {en} vs weyl {ws}"))?;
        ensure(kt == ws, || format!("{mu},{nu}: kt {kt} vs weyl {ws}"))?;
        convs.push(format!("{conv:?}"));
    }
    Ok(format!("4 pairs to x^10, conventions {convs:?}"))
}

/// Plane partitions of `m` counted row by row, independently of the layer machinery.
fn plane_partition_count(m: usize) -> usize {
    fn below(rem: usize, above: &[usize]) -> usize {
        if rem == 0 {
            return 1;
        }
        let mut total = 0;
        rows(0, rem, above, &mut Vec::new(), &mut total);
        total
    }
    // every nonempty row fitting under `above`, followed by the remaining rows
    fn rows(j: usize, rem: usize, above: &[usize], cur: &mut Vec<usize>, total: &mut usize) {
        if !cur.is_empty() {
            *total += below(rem, cur);
        }
        if j >= above.len() {
            return;
        }
        let cap = above[j].min(cur.last().copied().unwrap_or(usize::MAX)).min(rem);
        for v in 1..=cap {
            cur.push(v);
            rows(j + 1, rem - v, above, cur, total);
            cur.pop();
        }
    }
    below(m, &vec![m; m])
}

fn vacuum_character() -> Outcome {
    let want = [1usize, 1, 3, 6, 13, 24, 48, 86];
    let oracle: Vec<usize> = (0..8).map(plane_partition_count).collect();
    ensure(oracle == want, || format!("oracle gives {oracle:?}"))?;
    let v = vacuum_macmahon(0, 3, KSpec::Symbolic).unwrap();
    let got = char_enumerate(&v, 7);
    ensure(got == PowerSeries::from_counts(&want), || format!("module gives {got}"))?;
    Ok(got.to_string())
}

fn hwt() -> Outcome {
    let mut pairs = vec![(p("2,1,1"), p("2,2,2"))];
    let mut rng = StdRng::seed_from_u64(7);
    let mus: Vec<Partition> = partitions_up_to(6).into_iter().filter(|m| m.get(1) < 3).collect();
    let nus: Vec<Partition> = partitions_up_to(9).into_iter().filter(|g| g.get(1) < 3 && is_colorless(g, 3)).collect();
    while pairs.len() < 6 {
        let pair = (mus.choose(&mut rng).unwrap().clone(), nus.choose(&mut rng).unwrap().clone());
        if !pairs.contains(&pair) {
            pairs.push(pair);
        }
    }
    for (mu, nu) in &pairs {
        for k in 0..3 {
            let g = g_module(mu, nu, k, 3).map_err(|e| e.to_string())?;
            let rep = hwt_check(&g, mu, nu, k, 3, g.level()).map_err(|e| e.to_string())?;
            rep.ensure().map_err(|e| format!("{mu},{nu} k={k}: {e}"))?;
        }
    }
    let s: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}{b}")).collect();
    Ok(s.join(" "))
}

fn n_vs_h() -> Outcome {
    let nm = n_module(&p("1"), &p("1"), 0, 3).unwrap();
    let m = nm.prefix_len() as i64;
    let desc = MacmahonDescriptor {
        kind: MacmahonKind::General { alpha: p("1"), beta: p("1"), gamma: Partition::empty() },
        n: 3,
        k: 0,
        kspec: KSpec::Symbolic,
    };
    let h = special_k_quotient(&desc, Box3::new(1, 1, m + 1), 0).map_err(|e| e.to_string())?;
    let mut dims = Vec::new();
    for d in 0..=6 {
        let mut a = nm.enumerate(d);
        let mut b = h.enumerate(d);
        a.sort();
        b.sort();
        ensure(a == b, || format!("degree {d}: {} vs {}", a.len(), b.len()))?;
        dims.push(a.len());
    }
    Ok(format!("box (1,1,{}) for m={m} Fock factors, dims {dims:?}", m + 1))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("corner/color golden test", corners_golden),
        ("K row = K corner", k_formula),
        ("defining relations", relations),
        ("Fock vs wedge", wedge),
        ("resonance classification", resonance),
        ("levels", levels),
        ("colorless suite", colorless_suite),
        ("orbit suite", orbit_suite),
        ("character identity", character_identity),
        ("vacuum Macmahon character", vacuum_character),
        ("G lowest weight", hwt),
        ("N = H", n_vs_h),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("criterion {:>2} PASS  {name} ({secs:.1}s): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
