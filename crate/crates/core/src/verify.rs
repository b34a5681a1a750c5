//! The numbered checks behind `verify-all`. Outcome text never includes
//! timings.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exactalg::{kernel_basis, rref, RatMatrix, Rational};
use crate::koszul::{h1_closed_formula, homology_dims, w_dims};
use crate::orbit::{is_polarization, radical, standard_polarization, Functional, Subspace};
use crate::series::{freeness_identity, hilbert_ym, lie_dims_moebius, pbw_check, w_series};
use crate::weyl::{separation_probe, ym_weyl_map, Poly, WeylElement, WeylMapOptions};
use crate::ymquotient::{build, kernel_intersection_dims, named_basis_labels};

pub const DEFAULT_SEED: u64 = 0x5eed_7a11;

/// `dim ym(3)_j`, `j = 1..17`.
pub const YM3_DIMS: [u64; 17] = [
    3, 3, 5, 10, 24, 50, 120, 270, 640, 1500, 3600, 8610, 20880, 50700, 124024, 304290, 750120,
];

/// `(l, coordinates in the dual of the named basis, expected weight)`.
pub fn named_functionals() -> Vec<(usize, BTreeMap<String, Rational>, usize)> {
    let c = |ks: &[&str]| ks.iter().map(|k| (k.to_string(), Rational::one())).collect();
    vec![
        (2, c(&["x13", "x23"]), 1),
        (3, c(&["x112"]), 2),
        (3, c(&["x112", "x123"]), 3),
        (4, c(&["x312", "x2312", "x1112"]), 4),
    ]
}

/// Polarizations listed for [`named_functionals`], same order.
pub fn named_polarizations() -> Vec<Vec<&'static str>> {
    let mut w4 = vec!["x12", "x13", "x112", "x221", "x113", "x123", "x312"];
    w4.extend(&crate::ymquotient::NAMED_BASIS_LABELS[11..]);
    vec![
        vec!["x1", "x2", "x12", "x13", "x23"],
        vec!["x2", "x12", "x13", "x23", "x112", "x221", "x113", "x123", "x312"],
        vec!["x12", "x13", "x23", "x112", "x221", "x113", "x123", "x312"],
        w4,
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Timed {
    pub outcome: Outcome,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

pub const NAMES: [&str; 11] = [
    "dimension sequence",
    "quotient vs Moebius",
    "named bases and identities",
    "Koszul homology",
    "W(n) cross-check",
    "freeness and PBW",
    "kernel characterization",
    "orbit method",
    "Weyl maps",
    "separation probe",
    "property suites",
];

/// Runtime limit attached to each criterion, if any.
pub fn limit(id: u8) -> Option<Duration> {
    match id {
        1 => Some(Duration::from_secs(1)),
        2 => Some(Duration::from_secs(180)),
        3 => Some(Duration::from_secs(10)),
        4 => Some(Duration::from_secs(120)),
        7 => Some(Duration::from_secs(60)),
        10 => Some(Duration::from_secs(300)),
        _ => None,
    }
}

fn outcome(id: u8, checks: Vec<(String, bool)>) -> Outcome {
    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(s, _)| s.as_str()).collect();
    let detail = if failed.is_empty() {
        format!("{} checks passed", checks.len())
    } else {
        format!("{} of {} checks failed: {}", failed.len(), checks.len(), failed.join("; "))
    };
    Outcome {
        id,
        name: NAMES[id as usize - 1],
        passed: failed.is_empty(),
        detail,
    }
}

/// Runs criterion `id` (1..=11).
pub fn run(id: u8, seed: u64) -> Result<Timed> {
    let start = Instant::now();
    let checks = match id {
        1 => c1()?,
        2 => c2()?,
        3 => c3()?,
        4 => c4()?,
        5 => c5()?,
        6 => c6()?,
        7 => c7()?,
        8 => c8(seed)?,
        9 => c9()?,
        10 => c10()?,
        11 => c11(seed)?,
        _ => return Err(crate::Error::InvalidInput(format!("no criterion {id}"))),
    };
    let elapsed = start.elapsed();
    let mut out = outcome(id, checks);
    let limit = limit(id);
    if let Some(lim) = limit {
        if elapsed >= lim {
            out.passed = false;
            out.detail = format!("{}; runtime limit {}s exceeded", out.detail, lim.as_secs());
        }
    }
    Ok(Timed {
        outcome: out,
        elapsed,
        limit,
    })
}

pub fn run_all(seed: u64) -> Result<Vec<Timed>> {
    (1..=11).map(|id| run(id, seed)).collect()
}

fn c1() -> Result<Vec<(String, bool)>> {
    let t = lie_dims_moebius(3, 17)?;
    Ok((1..=17)
        .map(|j| (format!("dim ym(3)_{j}"), t.get(j) == Some(&BigInt::from(YM3_DIMS[j - 1]))))
        .collect())
}

fn c2() -> Result<Vec<(String, bool)>> {
    let table = lie_dims_moebius(3, 8)?;
    let mut checks = Vec::new();
    for l in 1..=8 {
        let g = build(3, l)?;
        let ok = g.dims().iter().enumerate().all(|(j, d)| table.get(j + 1) == Some(&BigInt::from(*d)));
        checks.push((format!("ym(3)/C^{l} dims"), ok && g.dims().len() == l));
    }
    Ok(checks)
}

fn c3() -> Result<Vec<(String, bool)>> {
    let mut checks = Vec::new();
    for (l, size) in [(1, 3), (2, 6), (3, 11), (4, 21)] {
        let g = build(3, l)?;
        let ok = named_basis_labels(3, l)?.len() == size && g.dim() == size && g.verify_named_basis()?;
        checks.push((format!("B_{l} basis of size {size}"), ok));
    }
    let g = build(3, 4)?;
    let ids = g.check_identities()?;
    checks.push(("seven identities present".into(), ids.len() == 7));
    checks.extend(ids.into_iter().map(|(s, ok)| (format!("identity {s}"), ok)));
    Ok(checks)
}

fn c4() -> Result<Vec<(String, bool)>> {
    let mut checks = Vec::new();
    for n in 2..=5 {
        let mut h0_total = 0;
        for p in 0..=8 {
            let h = homology_dims(n, p)?;
            h0_total += h.h0;
            checks.push((format!("n={n} p={p} h2=h3=0"), h.h2 == 0 && h.h3 == 0));
            checks.push((format!("n={n} p={p} h1 closed form"), BigInt::from(h.h1) == h1_closed_formula(n, p)));
            if n == 3 && p >= 1 {
                checks.push((format!("n=3 p={p} h1=2p+1"), h.h1 == 2 * p + 1));
            }
        }
        checks.push((format!("n={n} total H_0 = 1"), h0_total == 1));
    }
    Ok(checks)
}

fn c5() -> Result<Vec<(String, bool)>> {
    let mut checks = Vec::new();
    for n in 2..=5 {
        let w = w_series(n, 9)?;
        let ok = match w_dims(n, 9) {
            Ok(dims) => dims.iter().enumerate().all(|(k, d)| BigInt::from(*d) == *w.coeff(k + 2)),
            Err(_) => false,
        };
        checks.push((format!("W({n}) degrees 2..9"), ok));
    }
    let w2 = w_series(2, 9)?;
    let single = (0..=9).all(|m| *w2.coeff(m) == BigInt::from(u8::from(m == 2)));
    checks.push(("W(2) is one generator of degree 2".into(), single));
    Ok(checks)
}

fn c6() -> Result<Vec<(String, bool)>> {
    let mut checks = Vec::new();
    for n in 2..=6 {
        checks.push((format!("freeness n={n}"), freeness_identity(n, 20)?));
        let dims = lie_dims_moebius(n, 20)?;
        checks.push((format!("pbw n={n}"), pbw_check(n, &dims, 20)?));
    }
    Ok(checks)
}

fn c7() -> Result<Vec<(String, bool)>> {
    let g = build(3, 5)?;
    let dims = kernel_intersection_dims(&g, 5)?;
    let h = hilbert_ym(3, 5)?;
    let mut checks = Vec::new();
    for d in 0..=5 {
        // coefficient of t^d in H(t) (1-t)^3
        let want: BigInt = (0..=d.min(3))
            .map(|k| {
                let c = [1, -3, 3, -1][k];
                h.coeff(d - k) * c
            })
            .sum();
        checks.push((format!("degree {d}"), dims.get(d).map(|&x| BigInt::from(x)) == Some(want)));
    }
    Ok(checks)
}

fn random_functional(g: &crate::ymquotient::GradedNilpotentLie, rng: &mut ChaCha8Rng) -> Result<Functional> {
    let vals = (0..g.dim())
        .map(|_| {
            if rng.gen_bool(0.3) {
                Rational::zero()
            } else {
                Rational::new(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=4))
            }
        })
        .collect();
    Functional::from_values(g, vals)
}

fn c8(seed: u64) -> Result<Vec<(String, bool)>> {
    let mut checks = Vec::new();
    for ((l, coords, weight), labels) in named_functionals().into_iter().zip(named_polarizations()) {
        let g = build(3, l)?;
        let f = Functional::from_labels(&g, &coords)?;
        let w = standard_polarization(&g, &f)?.weight;
        checks.push((format!("l={l} weight {weight} (got {w})"), w == weight));
        let h = Subspace::span_of_labels(&g, &labels)?;
        checks.push((format!("l={l} weight {weight} listed polarization"), is_polarization(&g, &f, &h)?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for l in 2..=4 {
        let g = build(3, l)?;
        let mut bad = 0;
        for _ in 0..100 {
            let f = random_functional(&g, &mut rng)?;
            let rep = standard_polarization(&g, &f)?;
            let rad = radical(&g, &f)?.dim();
            let h = &rep.polarization;
            let ok = 2 * h.dim() == g.dim() + rad && rep.weight == g.dim() - h.dim() && is_polarization(&g, &f, h)?;
            if !ok {
                bad += 1;
            }
        }
        checks.push((format!("l={l}: 100 random functionals, {bad} bad"), bad == 0));
    }
    Ok(checks)
}

fn c9() -> Result<Vec<(String, bool)>> {
    let mut checks = Vec::new();
    for (l, coords, weight) in named_functionals() {
        let g = build(3, l)?;
        let f = Functional::from_labels(&g, &coords)?;
        let depth = if weight == 4 { 4 } else { 3 };
        let rep = ym_weyl_map(
            &g,
            &f,
            &WeylMapOptions {
                truncation: None,
                surjectivity_depth: depth,
            },
        )?;
        let tag = format!("weight {weight}");
        checks.push((format!("{tag} homomorphism"), rep.hom_check));
        checks.push((format!("{tag} relators vanish"), rep.relator_check));
        let s = rep.surjectivity.as_ref().is_some_and(|s| s.surjective);
        checks.push((format!("{tag} surjective within L={depth}"), s));
    }
    Ok(checks)
}

fn c10() -> Result<Vec<(String, bool)>> {
    let cands: Vec<_> = named_functionals().into_iter().map(|(l, c, _)| (l, c)).collect();
    let rep = separation_probe(3, 4, &cands)?;
    Ok(rep
        .entries
        .iter()
        .map(|e| (format!("{} separated", e.monomial), e.separated()))
        .collect())
}

pub fn random_weyl(r: usize, rng: &mut ChaCha8Rng) -> WeylElement {
    let terms = (0..rng.gen_range(1..=4))
        .map(|_| {
            let mut a = vec![0u32; r];
            let mut b = vec![0u32; r];
            for _ in 0..rng.gen_range(0..=3) {
                let i = rng.gen_range(0..r);
                if rng.gen_bool(0.5) {
                    a[i] += 1;
                } else {
                    b[i] += 1;
                }
            }
            ((a, b), Rational::new(rng.gen_range(-4i64..=4), rng.gen_range(1i64..=3)))
        })
        .collect::<Vec<_>>();
    WeylElement::from_terms(r, terms)
}

fn poly_basis(r: usize, d: u32) -> Vec<Poly> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|m: Vec<u32>| {
                let used: u32 = m.iter().sum();
                (0..=d - used).map(move |e| {
                    let mut m2 = m.clone();
                    m2.push(e);
                    m2
                })
            })
            .collect();
    }
    out.into_iter().map(|m| Poly::from([(m, Rational::one())])).collect()
}

fn random_matrix(rng: &mut ChaCha8Rng) -> RatMatrix {
    let rows = rng.gen_range(1..=7);
    let cols = rng.gen_range(1..=7);
    // low-rank products as well as dense random entries
    if rng.gen_bool(0.4) {
        let k = rng.gen_range(0..=rows.min(cols));
        let a = RatMatrix::from_rows(
            k,
            (0..rows).map(|_| (0..k).map(|_| Rational::from(rng.gen_range(-3i64..=3))).collect()).collect(),
        );
        let b = RatMatrix::from_rows(
            cols,
            (0..k).map(|_| (0..cols).map(|_| Rational::from(rng.gen_range(-3i64..=3))).collect()).collect(),
        );
        a.mul(&b)
    } else {
        RatMatrix::from_rows(
            cols,
            (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| Rational::new(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=3)))
                        .collect()
                })
                .collect(),
        )
    }
}

fn c11(seed: u64) -> Result<Vec<(String, bool)>> {
    let mut checks = Vec::new();
    for (n, l) in [(2, 8), (3, 6), (4, 5), (5, 4)] {
        let g = build(n, l)?;
        checks.push((format!("ym({n})/C^{l} antisymmetry"), g.check_antisymmetry().is_ok()));
        checks.push((format!("ym({n})/C^{l} Jacobi"), g.check_jacobi().is_ok()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..200 {
        let r = rng.gen_range(1..=2);
        let (a, b, c) = (random_weyl(r, &mut rng), random_weyl(r, &mut rng), random_weyl(r, &mut rng));
        let left = a.mul(&b).mul(&c);
        let right = a.mul(&b.mul(&c));
        let acts = poly_basis(r, 8).iter().all(|p| left.act(p) == a.act(&b.act(&c.act(p))));
        if left != right || !acts {
            bad += 1;
        }
    }
    checks.push((format!("Weyl associativity on 200 triples, {bad} bad"), bad == 0));
    let mut bad = 0;
    for _ in 0..500 {
        let m = random_matrix(&mut rng);
        let (_, pivots) = rref(&m);
        let ker = kernel_basis(&m);
        let zero = vec![Rational::zero(); m.rows()];
        let ok = pivots.len() + ker.len() == m.cols()
            && pivots.len() == m.rank()
            && ker.iter().all(|v| m.mul_vec(v) == zero);
        if !ok {
            bad += 1;
        }
    }
    checks.push((format!("rank-nullity on 500 matrices, {bad} bad"), bad == 0));
    let cands: Vec<_> = named_functionals().into_iter().map(|(l, c, _)| (l, c)).collect();
    let a = format!("{:?}", separation_probe(3, 3, &cands)?);
    let b = format!("{:?}", separation_probe(3, 3, &cands)?);
    checks.push(("repeated probe identical".into(), a == b));
    Ok(checks)
}
