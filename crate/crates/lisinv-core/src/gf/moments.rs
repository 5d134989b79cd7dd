//! Exact moment extraction from a generating function, and finite-`n`
//! estimates of the asymptotic growth statistics.

use num_traits::Zero;

use super::GfError;
use crate::series::{rat_int, BiSeries, JetSeries, Rat, SeriesError};

/// Exact expectation and variance of the LIS statistic at a fixed size `n`,
/// read off a generating function.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentReport {
    pub n: usize,
    pub e: Rat,
    pub var: Rat,
}

impl MomentReport {
    /// `E/n`, the linear-growth statistic.
    pub fn slope_e(&self) -> Rat {
        &self.e / rat_int(self.n as i64)
    }

    /// `Var/n`.
    pub fn slope_var(&self) -> Rat {
        &self.var / rat_int(self.n as i64)
    }

    /// `Var·n²`, the statistic for classes whose variance decays.
    pub fn var_times_n2(&self) -> Rat {
        &self.var * rat_int((self.n * self.n) as i64)
    }
}

/// Moments from the full bivariate series:
/// `E = [xⁿ]∂H/∂q|_{q=1} / [xⁿ]H(x,1)`, the second factorial moment from the
/// second derivative, and `Var = E₂ + E − E²`.
pub fn moments(series: &BiSeries, n: usize) -> Result<MomentReport, GfError> {
    if n > series.order() {
        return Err(GfError::Series(SeriesError::TruncationExceeded {
            n,
            order: series.order(),
        }));
    }
    let slice = series.slice(n);
    let total = slice.eval_one();
    if total.is_zero() {
        return Err(GfError::EmptyClassAt { n });
    }
    let d1 = slice.derivative();
    let e = d1.eval_one() / &total;
    let e2 = d1.derivative().eval_one() / &total;
    let var = &e2 + &e - &e * &e;
    Ok(MomentReport { n, e, var })
}

/// Same moments from the jet representation.
pub fn moments_jet(series: &JetSeries, n: usize) -> Result<MomentReport, GfError> {
    if n > series.order() {
        return Err(GfError::Series(SeriesError::TruncationExceeded {
            n,
            order: series.order(),
        }));
    }
    let total = series.value(n);
    if total.is_zero() {
        return Err(GfError::EmptyClassAt { n });
    }
    let e = series.d1(n) / total;
    let e2 = series.d2(n) / total;
    let var = &e2 + &e - &e * &e;
    Ok(MomentReport { n, e, var })
}

/// How a class's statistic approaches its constant: linearly growing moments
/// (`E/n → c`), a plain limit (`E → c`), or a decaying variance (`Var·n² → c`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlopeMode {
    Slope,
    Limit,
    VarTimesN2,
}

impl SlopeMode {
    pub fn parse(s: &str) -> Option<SlopeMode> {
        match s {
            "slope" => Some(SlopeMode::Slope),
            "limit" => Some(SlopeMode::Limit),
            "n2" => Some(SlopeMode::VarTimesN2),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SlopeMode::Slope => "slope",
            SlopeMode::Limit => "limit",
            SlopeMode::VarTimesN2 => "n2",
        }
    }
}

/// Moments at two sizes, with the finite-`n` slope estimators.
#[derive(Clone, Debug)]
pub struct SlopeReport {
    pub at_lo: MomentReport,
    pub at_hi: MomentReport,
}

impl SlopeReport {
    pub fn n_lo(&self) -> usize {
        self.at_lo.n
    }

    pub fn n_hi(&self) -> usize {
        self.at_hi.n
    }

    /// Plain ratio `E(n_hi)/n_hi`.
    pub fn e_ratio(&self) -> Rat {
        self.at_hi.slope_e()
    }

    /// Difference quotient `(E(n_hi) − E(n_lo)) / (n_hi − n_lo)`; kills the
    /// constant term of `E ≈ c·n + d`.
    pub fn e_diff_quotient(&self) -> Rat {
        (&self.at_hi.e - &self.at_lo.e) / rat_int((self.at_hi.n - self.at_lo.n) as i64)
    }

    pub fn var_ratio(&self) -> Rat {
        self.at_hi.slope_var()
    }

    pub fn var_diff_quotient(&self) -> Rat {
        (&self.at_hi.var - &self.at_lo.var) / rat_int((self.at_hi.n - self.at_lo.n) as i64)
    }

    /// The estimator the given mode compares against the paper constant.
    pub fn e_statistic(&self, mode: SlopeMode) -> Rat {
        match mode {
            SlopeMode::Slope => self.e_diff_quotient(),
            SlopeMode::Limit => self.at_hi.e.clone(),
            SlopeMode::VarTimesN2 => self.at_hi.e.clone(),
        }
    }

    pub fn var_statistic(&self, mode: SlopeMode) -> Rat {
        match mode {
            SlopeMode::Slope => self.var_diff_quotient(),
            SlopeMode::Limit => self.at_hi.var.clone(),
            SlopeMode::VarTimesN2 => self.at_hi.var_times_n2(),
        }
    }
}

/// Slope estimates from a jet evaluation covering `n_hi`.
pub fn slope_from_jets(jets: &JetSeries, n_lo: usize, n_hi: usize) -> Result<SlopeReport, GfError> {
    if n_lo == 0 || n_lo >= n_hi {
        return Err(GfError::BadParameter {
            what: "slope range requires 0 < n_lo < n_hi",
            k: n_lo as u32,
        });
    }
    Ok(SlopeReport {
        at_lo: moments_jet(jets, n_lo)?,
        at_hi: moments_jet(jets, n_hi)?,
    })
}
