//! The generating-function catalog: every `H_T(x, q)` the toolkit knows,
//! evaluable as an exact bivariate series or as `q = 1` jets at any truncation
//! order, with exact moments, slope estimates, and algebraic constants.

pub mod data;
pub mod families;
pub mod moments;
pub mod parse;
pub mod roots;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

pub use data::{CatalogData, ConstExpr, ConstSpec, RowGf, Table1Row};
pub use moments::{moments, moments_jet, MomentReport, SlopeMode, SlopeReport};
pub use roots::{smallest_root, AlgebraicRoot, ConstInterval};

use crate::perm::{Pattern, Permutation};
use crate::series::{rat, BiSeries, Coeff, JetSeries, Series, SeriesError};
use parse::parse_xq;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GfError {
    UnknownName(String),
    BadParameter {
        what: &'static str,
        k: u32,
    },
    Series(SeriesError),
    /// A moment request hit a size with no class members.
    EmptyClassAt {
        n: usize,
    },
    /// Data-file syntax or validation problem.
    Data(String),
    /// An internal construction invariant failed (e.g. a slice that must
    /// vanish did not).
    ConstructionIntegrity(&'static str),
    RootConfiguration(String),
}

impl fmt::Display for GfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfError::UnknownName(n) => write!(f, "unknown generating function `{n}`"),
            GfError::BadParameter { what, k } => write!(f, "{what} (got {k})"),
            GfError::Series(e) => write!(f, "series error: {e}"),
            GfError::EmptyClassAt { n } => write!(f, "empty class at n = {n}"),
            GfError::Data(msg) => write!(f, "table data: {msg}"),
            GfError::ConstructionIntegrity(msg) => write!(f, "construction integrity: {msg}"),
            GfError::RootConfiguration(msg) => write!(f, "root isolation: {msg}"),
        }
    }
}

impl core::error::Error for GfError {}

impl From<SeriesError> for GfError {
    fn from(e: SeriesError) -> Self {
        GfError::Series(e)
    }
}

/// `H(x, q)` for plain 3412-avoiding involutions:
/// `(A − √(A² − 4x²)) / (2x²)` with `A = 1 − xq − x²(q−1)`.
///
/// The numerator is built at order `N + 2`; its two lowest slices are checked
/// to vanish before the exact shift by `x²`.
pub fn h_3412<C: Coeff>(order: usize) -> Result<Series<C>, GfError> {
    let inner = order + 2;
    let a: Series<C> = Series::from_poly(&parse_xq("1-q*x-(q-1)*x^2").expect("static"), inner);
    let four_x2: Series<C> = Series::from_poly(&parse_xq("4*x^2").expect("static"), inner);
    let disc = a.mul(&a).sub(&four_x2);
    let root = disc.sqrt()?;
    let num = a.sub(&root);
    let shifted = num.shift_down_exact(2).map_err(|_| {
        GfError::ConstructionIntegrity("low-order slices of the H numerator must vanish")
    })?;
    Ok(shifted.scale(&C::from_rat(&rat(1, 2))))
}

/// How a catalog entry is constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// The algebraic closed form for bare 3412 avoidance.
    Motzkin,
    /// A fixed rational closed form (named, or a table row).
    ClosedForm,
    FkRecurrence(u32),
    FkNarayana(u32),
    Gk(u32),
    DecK(u32),
    DecKChebyshev(u32),
}

/// A named generating function: which patterns (besides 3412) its class
/// avoids, and how to build it.
#[derive(Clone, Debug)]
pub struct GfSpec {
    pub name: String,
    /// Secondary avoided patterns; the oracle checks each one joined with
    /// 3412. Empty for the bare class.
    pub patterns: Vec<Pattern>,
    pub construction: Construction,
}

/// Closed forms for the short patterns, as printed.
const NAMED_CLOSED: &[(&str, &str, &str, &str)] = &[
    // (name, pattern, numerator, denominator)
    ("H_12", "12", "1-x+q*x", "1-x"),
    ("H_21", "21", "1", "1-q*x"),
    (
        "H_123",
        "123",
        "(1-x)^3*(1+x) + q*x*(1-(1-q)*x-x^2+x^3)",
        "(1-x)^3*(1+x)",
    ),
    ("H_132", "132", "1-(1-q)*x^2", "1-q*x-x^2"),
    ("H_213", "213", "1-(1-q)*x^2", "1-q*x-x^2"),
    ("H_321", "321", "1", "1-q*x-q*x^2"),
    (
        "H_4123",
        "4123",
        "(1-x)^3*(1+x)",
        "(1-x)^3*(1+x) - q*x*(1-x)^2*(1+x) - q^2*x^4",
    ),
];

/// The loaded catalog: table data plus the full spec list.
pub struct Catalog {
    data: CatalogData,
    specs: Vec<GfSpec>,
}

impl Catalog {
    /// Load the checked-in table.
    pub fn load() -> Result<Catalog, GfError> {
        Self::load_from_str(data::BUILTIN_TABLE)
    }

    /// Load from alternative table text (corruption injection, experiments).
    pub fn load_from_str(src: &str) -> Result<Catalog, GfError> {
        let data = data::parse_catalog_data(src)?;
        let mut specs = Vec::new();
        specs.push(GfSpec {
            name: "H_3412".into(),
            patterns: Vec::new(),
            construction: Construction::Motzkin,
        });
        for (name, pattern, _, _) in NAMED_CLOSED {
            specs.push(GfSpec {
                name: (*name).into(),
                patterns: alloc::vec![pattern.parse().unwrap()],
                construction: Construction::ClosedForm,
            });
        }
        for k in 1..=6u32 {
            specs.push(GfSpec {
                name: format!("F_{k}"),
                patterns: alloc::vec![Permutation::identity(k as usize)],
                construction: Construction::FkRecurrence(k),
            });
        }
        for k in 3..=5u32 {
            specs.push(GfSpec {
                name: format!("G_{k}"),
                patterns: alloc::vec![Permutation::k_then_rising(k as usize)],
                construction: Construction::Gk(k),
            });
        }
        for k in 1..=6u32 {
            specs.push(GfSpec {
                name: format!("Dec_{k}"),
                patterns: alloc::vec![Permutation::decreasing(k as usize)],
                construction: Construction::DecK(k),
            });
        }
        for row in &data.rows {
            specs.push(GfSpec {
                name: format!("Table1_{}", row.key),
                patterns: row.patterns.clone(),
                construction: Construction::ClosedForm,
            });
        }
        Ok(Catalog { data, specs })
    }

    pub fn data(&self) -> &CatalogData {
        &self.data
    }

    pub fn specs(&self) -> &[GfSpec] {
        &self.specs
    }

    pub fn spec(&self, name: &str) -> Result<&GfSpec, GfError> {
        self.specs
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| GfError::UnknownName(name.to_string()))
    }

    pub fn spec_names(&self) -> Vec<&str> {
        self.specs.iter().map(|s| s.name.as_str()).collect()
    }

    /// `Some((num, den))` for rational forms, `None` for the algebraic
    /// Motzkin form.
    fn closed_ratio(
        &self,
        name: &str,
    ) -> Result<Option<(crate::series::XqPoly, crate::series::XqPoly)>, GfError> {
        if let Some((_, _, num, den)) = NAMED_CLOSED.iter().find(|(n, _, _, _)| *n == name) {
            return Ok(Some((
                parse_xq(num).expect("static"),
                parse_xq(den).expect("static"),
            )));
        }
        if let Some(key) = name.strip_prefix("Table1_") {
            let row = self
                .data
                .row(key)
                .ok_or_else(|| GfError::UnknownName(name.to_string()))?;
            return match &row.gf {
                RowGf::Rational { num, den } => Ok(Some((num.clone(), den.clone()))),
                RowGf::Motzkin => Ok(None),
            };
        }
        Err(GfError::UnknownName(name.to_string()))
    }

    /// The named closed form at order `N` (spec names plus `Table1_*` rows).
    pub fn closed_form<C: Coeff>(&self, name: &str, order: usize) -> Result<Series<C>, GfError> {
        match self.closed_ratio(name)? {
            None => h_3412(order),
            Some((num, den)) => {
                Ok(Series::from_poly(&num, order).div(&Series::from_poly(&den, order))?)
            }
        }
    }

    fn build<C: Coeff>(&self, spec: &GfSpec, order: usize) -> Result<Series<C>, GfError> {
        match spec.construction {
            Construction::Motzkin => h_3412(order),
            Construction::ClosedForm => self.closed_form(&spec.name, order),
            Construction::FkRecurrence(k) => families::f_k_recurrence(k, order),
            Construction::FkNarayana(k) => families::f_k_narayana(k, order),
            Construction::Gk(k) => families::g_k(k, order),
            Construction::DecK(k) => families::dec_k(k, order),
            Construction::DecKChebyshev(k) => families::dec_k_chebyshev(k, order),
        }
    }

    /// Full bivariate series for a named catalog entry.
    pub fn bi_series(&self, name: &str, order: usize) -> Result<BiSeries, GfError> {
        let spec = self.spec(name)?;
        self.build(spec, order)
    }

    /// Jet series (value and first two `q`-derivatives at `q = 1`).
    pub fn jet_series(&self, name: &str, order: usize) -> Result<JetSeries, GfError> {
        let spec = self.spec(name)?;
        self.build(spec, order)
    }

    /// Finite-`n` slope estimates for a named entry, from one jet evaluation
    /// at truncation order `n_hi`.
    pub fn asymptotic_slope(
        &self,
        name: &str,
        n_lo: usize,
        n_hi: usize,
    ) -> Result<SlopeReport, GfError> {
        let jets = self.jet_series(name, n_hi)?;
        moments::slope_from_jets(&jets, n_lo, n_hi)
    }

    /// Exact rational interval (width ≤ 1e−13) for a named asymptotic
    /// constant such as `thm_vi_E` or `tbl_4321_Var`.
    pub fn constant(&self, name: &str) -> Result<(ConstInterval, SlopeMode), GfError> {
        let spec = self
            .data
            .constant(name)
            .ok_or_else(|| GfError::UnknownName(name.to_string()))?;
        Ok((eval_const_expr(&spec.expr)?, spec.mode))
    }

    /// Decimal value of a named constant, ≥ 12 significant digits.
    pub fn constant_for(&self, name: &str) -> Result<String, GfError> {
        let (interval, _) = self.constant(name)?;
        Ok(interval.decimal(12))
    }
}

/// Evaluate a constant expression to a tight rational interval.
pub fn eval_const_expr(expr: &ConstExpr) -> Result<ConstInterval, GfError> {
    match expr {
        ConstExpr::Rational(r) => Ok(ConstInterval::exact(r.clone())),
        ConstExpr::SqrtForm { k, c0, c1 } => {
            let (lo, hi) = crate::decimal::sqrt_interval(&crate::series::rat_int(*k as i64), 18);
            let (a, b) = (c0 + c1 * &lo, c0 + c1 * &hi);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            Ok(ConstInterval { lo, hi })
        }
        ConstExpr::RootForm { poly, value, den } => {
            let mut root = smallest_root(poly)?;
            root.refine(&rat(1, 1_000_000_000_000_000_000));
            let iv = ConstInterval {
                lo: root.lo.clone(),
                hi: root.hi.clone(),
            };
            Ok(iv.eval_poly(value, den))
        }
    }
}
