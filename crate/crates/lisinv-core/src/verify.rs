//! The master verification suite: every generating function against the
//! enumeration oracle, the family equivalences, and the structural
//! decomposition — one pass/fail record per check, with the first
//! counterexample spelled out on failure.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::gf::{families, Catalog, GfError};
use crate::oracle::{
    enumerate_involutions, is_3412_avoiding_involution, structural_branch, Oracle, PatternSet,
    StructuralBranch,
};
use crate::perm::{Pattern, Permutation};
use crate::sampler::CountTable;
use crate::series::{rat, rat_int, BiSeries, QPoly, Series};

pub struct VerifyConfig {
    /// Oracle comparisons run for all sizes `0..=max_n`.
    pub max_n: usize,
    /// Truncation order for the non-oracle identities.
    pub order: usize,
    /// Restrict the per-gf checks to one catalog name.
    pub only: Option<String>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: 10,
            order: 64,
            only: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Empty when passed; the first counterexample otherwise.
    pub detail: String,
}

impl CheckResult {
    fn pass(name: String) -> Self {
        CheckResult {
            name,
            passed: true,
            detail: String::new(),
        }
    }

    fn fail(name: String, detail: String) -> Self {
        CheckResult {
            name,
            passed: false,
            detail,
        }
    }
}

/// Runs the whole suite. Failures are reported, never skipped; the only
/// filtering is the explicit `only` name for the per-gf checks.
pub fn run_all(catalog: &Catalog, cfg: &VerifyConfig) -> Result<Vec<CheckResult>, GfError> {
    let mut oracle = Oracle::new();
    let mut out = Vec::new();
    for spec in catalog.specs() {
        if cfg.only.as_ref().is_some_and(|o| o != &spec.name) {
            continue;
        }
        out.push(check_gf_against_oracle(
            catalog,
            &mut oracle,
            &spec.name,
            cfg.max_n,
        )?);
    }
    if cfg.only.is_none() {
        out.push(check_fk_equivalence(8, 60)?);
        out.push(check_dec_equivalence(60)?);
        out.push(check_g4_closed_form(catalog, 60)?);
        out.push(check_h3412_quadratic(cfg.order)?);
        out.push(check_motzkin_counts(&mut oracle, cfg.max_n.min(12))?);
        out.push(check_structural_decomposition(cfg.max_n)?);
        out.push(check_known_classes(&mut oracle, cfg.max_n));
        for row in &catalog.data().rows {
            if row.patterns.len() > 1 {
                out.push(check_row_equidistribution(
                    &mut oracle,
                    &row.key,
                    &row.patterns,
                    cfg.max_n.min(9),
                ));
            }
        }
    }
    Ok(out)
}

/// Exact slice-by-slice comparison of a catalog entry against the oracle, for
/// every secondary pattern of the class, plus the combinatorial-coefficient
/// sanity of the series itself.
pub fn check_gf_against_oracle(
    catalog: &Catalog,
    oracle: &mut Oracle,
    name: &str,
    max_n: usize,
) -> Result<CheckResult, GfError> {
    let check_name = format!("gf-oracle/{name}");
    let spec = catalog.spec(name)?;
    let series = catalog.bi_series(name, max_n)?;
    if let Err(n) = series.check_combinatorial() {
        return Ok(CheckResult::fail(
            check_name,
            format!(
                "slice x^{n} is not a nonneg-integer polynomial of q-degree <= n: {}",
                series.slice(n).render()
            ),
        ));
    }
    let sets: Vec<PatternSet> = if spec.patterns.is_empty() {
        alloc::vec![PatternSet::with_3412([])]
    } else {
        spec.patterns
            .iter()
            .map(|p| PatternSet::with_3412([p.clone()]))
            .collect()
    };
    for set in &sets {
        for n in 0..=max_n {
            let want = oracle
                .empirical_polynomial(n, set)
                .map_err(|e| GfError::Data(format!("oracle failed at n = {n}: {e}")))?;
            let got = series.slice(n);
            if *got != want {
                return Ok(CheckResult::fail(
                    check_name,
                    format!(
                        "avoid {{{}}} at n = {n}: gf slice [{}] vs oracle [{}]",
                        set.key(),
                        got.render(),
                        want.render()
                    ),
                ));
            }
        }
    }
    Ok(CheckResult::pass(check_name))
}

pub fn check_fk_equivalence(k_max: u32, order: usize) -> Result<CheckResult, GfError> {
    let name = "family/fk-recurrence-vs-narayana".to_string();
    let all: Vec<BiSeries> = families::f_k_all(k_max, order)?;
    for k in 2..=k_max {
        let nar: BiSeries = families::f_k_narayana(k, order)?;
        if all[k as usize] != nar {
            let n = first_differing_slice(&all[k as usize], &nar);
            return Ok(CheckResult::fail(
                name,
                format!(
                    "k = {k} differs at x^{n}: [{}] vs [{}]",
                    all[k as usize].slice(n).render(),
                    nar.slice(n).render()
                ),
            ));
        }
    }
    Ok(CheckResult::pass(name))
}

pub fn check_dec_equivalence(order: usize) -> Result<CheckResult, GfError> {
    let name = "family/dec-recurrence-vs-chebyshev".to_string();
    for k in 3..=6u32 {
        let a: BiSeries = families::dec_k(k, order)?;
        let b: BiSeries = families::dec_k_chebyshev(k, order)?;
        if a != b {
            let n = first_differing_slice(&a, &b);
            return Ok(CheckResult::fail(
                name,
                format!(
                    "k = {k} differs at x^{n}: [{}] vs [{}]",
                    a.slice(n).render(),
                    b.slice(n).render()
                ),
            ));
        }
        // same object at q = 1 as well (the classical univariate forms)
        if a.eval_q1() != b.eval_q1() {
            return Ok(CheckResult::fail(
                name,
                format!("k = {k}: q=1 projections differ"),
            ));
        }
    }
    Ok(CheckResult::pass(name))
}

pub fn check_g4_closed_form(catalog: &Catalog, order: usize) -> Result<CheckResult, GfError> {
    let name = "family/g4-vs-H_4123".to_string();
    let g: BiSeries = families::g_k(4, order)?;
    let h = catalog.closed_form::<QPoly>("H_4123", order)?;
    if g != h {
        let n = first_differing_slice(&g, &h);
        return Ok(CheckResult::fail(
            name,
            format!(
                "differs at x^{n}: [{}] vs [{}]",
                g.slice(n).render(),
                h.slice(n).render()
            ),
        ));
    }
    Ok(CheckResult::pass(name))
}

pub fn check_h3412_quadratic(order: usize) -> Result<CheckResult, GfError> {
    let name = "identity/h3412-quadratic".to_string();
    let h: BiSeries = crate::gf::h_3412(order)?;
    let b: BiSeries = Series::from_poly(
        &crate::gf::parse::parse_xq("q*x+(q-1)*x^2-1").expect("static"),
        order,
    );
    let lhs = h
        .mul(&h)
        .mul_xpow(2)
        .add(&b.mul(&h))
        .add(&BiSeries::one(order));
    if lhs != BiSeries::zero(order) {
        let n = first_differing_slice(&lhs, &BiSeries::zero(order));
        return Ok(CheckResult::fail(
            name,
            format!(
                "x²H² + (xq+x²(q−1)−1)H + 1 has nonzero slice x^{n}: [{}]",
                lhs.slice(n).render()
            ),
        ));
    }
    Ok(CheckResult::pass(name))
}

pub fn check_motzkin_counts(oracle: &mut Oracle, max_n: usize) -> Result<CheckResult, GfError> {
    let name = "oracle/motzkin-counts".to_string();
    let h: BiSeries = crate::gf::h_3412(max_n)?;
    let at_one = h.eval_q1();
    let table = CountTable::build(max_n);
    let set = PatternSet::with_3412([]);
    for (n, gf_count) in at_one.iter().enumerate().take(max_n + 1) {
        let class = oracle
            .lis_distribution(n, &set)
            .map_err(|e| GfError::Data(e.to_string()))?
            .class_size;
        if *gf_count != rat_int(class as i64) || table.count(n) != &BigUint::from(class) {
            return Ok(CheckResult::fail(
                name,
                format!(
                    "n = {n}: oracle {class}, gf {gf_count}, recurrence {}",
                    table.count(n)
                ),
            ));
        }
    }
    Ok(CheckResult::pass(name))
}

/// Every 3412-avoiding involution matches exactly one decomposition branch
/// with parts inside the class, and the recursive validation agrees with
/// direct pattern containment on all involutions.
pub fn check_structural_decomposition(max_n: usize) -> Result<CheckResult, GfError> {
    let name = "structure/block-decomposition".to_string();
    let three412: Pattern = "3412".parse().unwrap();
    for n in 0..=max_n {
        for p in enumerate_involutions(n).map_err(|e| GfError::Data(e.to_string()))? {
            let avoids = p.avoids(&three412);
            if n >= 1 && avoids {
                // exactly one branch fires and its parts are in-class
                match structural_branch(&p) {
                    Ok(StructuralBranch::FixedFirst { tail }) => {
                        if p.entries()[0] != 1 {
                            return Ok(CheckResult::fail(name, format!("{p}: branch mismatch")));
                        }
                        if !(tail.is_involution() && tail.avoids(&three412)) {
                            return Ok(CheckResult::fail(
                                name,
                                format!("{p}: tail {tail} leaves the class"),
                            ));
                        }
                    }
                    Ok(StructuralBranch::Framed { m, inner, tail }) => {
                        if !(m >= 2
                            && inner.is_involution()
                            && inner.avoids(&three412)
                            && tail.is_involution()
                            && tail.avoids(&three412))
                        {
                            return Ok(CheckResult::fail(
                                name,
                                format!("{p}: framed parts leave the class"),
                            ));
                        }
                        // reconstruction
                        let one = Permutation::identity(1);
                        let block = one.skew_sum(&inner).skew_sum(&one);
                        if block.direct_sum(&tail) != p {
                            return Ok(CheckResult::fail(
                                name,
                                format!("{p}: frame reconstruction failed"),
                            ));
                        }
                    }
                    Err(e) => {
                        return Ok(CheckResult::fail(name, format!("{p}: {e}")));
                    }
                }
            }
            // the recursive validation must agree with pattern containment
            if is_3412_avoiding_involution(&p) != avoids {
                return Ok(CheckResult::fail(
                    name,
                    format!("{p}: structural validity disagrees with 3412 avoidance"),
                ));
            }
        }
    }
    Ok(CheckResult::pass(name))
}

pub fn check_known_classes(oracle: &mut Oracle, max_n: usize) -> CheckResult {
    let name = "known-class/231-312-expectation".to_string();
    for pat in ["231", "312"] {
        let set = PatternSet::bare([pat.parse().unwrap()]);
        for n in 1..=max_n {
            match oracle.exact_expectation(n, &set) {
                Ok(e) => {
                    let want = rat(n as i64 + 1, 2);
                    if e != want {
                        return CheckResult::fail(
                            name,
                            format!("I_{n}({pat}): E = {e}, expected {want}"),
                        );
                    }
                }
                Err(e) => return CheckResult::fail(name, e.to_string()),
            }
        }
    }
    CheckResult::pass(name)
}

pub fn check_row_equidistribution(
    oracle: &mut Oracle,
    key: &str,
    patterns: &[Pattern],
    max_n: usize,
) -> CheckResult {
    let name = format!("equidistribution/{key}");
    for n in 0..=max_n {
        let mut first: Option<(String, QPoly)> = None;
        for p in patterns {
            let set = PatternSet::with_3412([p.clone()]);
            let poly = match oracle.empirical_polynomial(n, &set) {
                Ok(poly) => poly,
                Err(e) => return CheckResult::fail(name, e.to_string()),
            };
            match &first {
                None => first = Some((p.to_string(), poly)),
                Some((p0, poly0)) => {
                    if poly != *poly0 {
                        return CheckResult::fail(
                            name,
                            format!(
                                "n = {n}: {p0} has [{}], {p} has [{}]",
                                poly0.render(),
                                poly.render()
                            ),
                        );
                    }
                }
            }
        }
    }
    CheckResult::pass(name)
}

fn first_differing_slice(a: &BiSeries, b: &BiSeries) -> usize {
    for n in 0..=a.order().min(b.order()) {
        if a.slice(n) != b.slice(n) {
            return n;
        }
    }
    0
}
