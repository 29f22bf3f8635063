//! The `mbsum` command line.
//!
//! ```text
//! mbsum [--format json|csv] [--jobs J] <bern|mb|mbn|psi|psiprod|verify> ...
//! ```
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.
//! Output formats are described in `docs/formats.md`.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::bernoulli::bernoulli;
use crate::mobius_bernoulli::{mb_higher, mb_number, HigherMbRequest, Method};
use crate::powersums::{psi_poly, psi_products_conv, psi_products_poly, Polynomial};
use crate::verify::{self, Bounds, Report, Suite};
use crate::{format_rational, parse_rational, Error, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "mbsum", version, about = "Exact Möbius–Bernoulli numbers and coprime power sums")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Worker threads for `verify` (0 = one per core).
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Conv,
    Partition,
    Primepower,
    Kernel,
    Auto,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Conv => Method::Convolution,
            MethodArg::Partition => Method::Partition,
            MethodArg::Primepower => Method::PrimePower,
            MethodArg::Kernel => Method::Kernel,
            MethodArg::Auto => Method::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Arith,
    Series,
    Bernoulli,
    Mb,
    Psi,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Arith => Suite::Arith,
            SuiteArg::Series => Suite::Series,
            SuiteArg::Bernoulli => Suite::Bernoulli,
            SuiteArg::Mb => Suite::Mb,
            SuiteArg::Psi => Suite::Psi,
        }
    }
}

const K_RANGE: std::ops::RangeInclusive<i64> = 0..=200;

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bernoulli numbers B_0..B_max_k.
    Bern {
        #[arg(long, value_parser = clap::value_parser!(u32).range(K_RANGE))]
        max_k: u32,
    },
    /// Möbius–Bernoulli numbers M_0(n)..M_max_k(n).
    Mb {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(K_RANGE))]
        max_k: u32,
    },
    /// Higher-order Möbius–Bernoulli numbers M_k^N(n).
    Mbn {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// The order N.
        #[arg(long = "N", value_parser = clap::value_parser!(u32).range(1..=64))]
        power: u32,
        /// A single index k.
        #[arg(long, conflicts_with = "max_k", required_unless_present = "max_k",
              value_parser = clap::value_parser!(u32).range(0..=60))]
        k: Option<u32>,
        /// Every index 0..=max_k.
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=60))]
        max_k: Option<u32>,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Coprime power sum Ψ_k(x, n).
    Psi {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(K_RANGE))]
        k: u32,
        /// Evaluation point, an exact rational such as 5/2.
        #[arg(long, required_unless_present = "poly", conflicts_with = "poly")]
        x: Option<String>,
        /// Print the polynomial instead of a value.
        #[arg(long)]
        poly: bool,
    },
    /// Sums of products Ψ_k^N(x, n).
    Psiprod {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long = "N", value_parser = clap::value_parser!(u32).range(1..=32))]
        power: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=40))]
        k: u32,
        #[arg(long, required_unless_present = "poly", conflicts_with = "poly")]
        x: Option<String>,
        #[arg(long)]
        poly: bool,
    },
    /// Cross-check every computation route over parameter grids.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = Bounds::default().max_n)]
        max_n: u64,
        #[arg(long, default_value_t = Bounds::default().max_k)]
        max_k: usize,
        #[arg(long = "max-N", default_value_t = Bounds::default().max_power)]
        max_power: usize,
        #[arg(long, default_value_t = Bounds::default().order)]
        order: usize,
    },
}

/// A named input of a record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Param {
    Int(u64),
    Rational(Rational),
}

/// Computed value of a record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Rational(Rational),
    Polynomial(Polynomial),
}

/// One output row: inputs, value and the route that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputRecord {
    pub params: Vec<(&'static str, Param)>,
    pub route: &'static str,
    pub value: Value,
}

/// `{"num": "...", "den": "..."}` with decimal digit strings.
pub struct JsonRational<'a>(pub &'a Rational);

impl Serialize for JsonRational<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("num", &self.0.numer().to_string())?;
        m.serialize_entry("den", &self.0.denom().to_string())?;
        m.end()
    }
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Param::Int(v) => s.serialize_u64(*v),
            Param::Rational(r) => JsonRational(r).serialize(s),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Rational(r) => JsonRational(r).serialize(s),
            Value::Polynomial(p) => {
                let coeffs: Vec<JsonRational<'_>> = p.coeffs().iter().map(JsonRational).collect();
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("coeffs", &coeffs)?;
                m.end()
            }
        }
    }
}

impl Serialize for OutputRecord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Params<'a>(&'a [(&'static str, Param)]);
        impl Serialize for Params<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    m.serialize_entry(k, v)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("params", &Params(&self.params))?;
        m.serialize_entry("route", self.route)?;
        m.serialize_entry("value", &self.value)?;
        m.end()
    }
}

fn param_csv(p: &Param) -> String {
    match p {
        Param::Int(v) => v.to_string(),
        Param::Rational(r) => format_rational(r),
    }
}

fn csv_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Records as CSV. Rational cells are `num/den`; a polynomial spans one row
/// per coefficient, with a `power` column.
pub fn records_to_csv(records: &[OutputRecord]) -> String {
    let Some(first) = records.first() else {
        return String::new();
    };
    let polynomial = matches!(first.value, Value::Polynomial(_));
    let mut header: Vec<&str> = first.params.iter().map(|(k, _)| *k).collect();
    header.push("route");
    if polynomial {
        header.push("power");
    }
    header.push("value");
    let mut out = header.join(",");
    out.push('\n');
    for r in records {
        let prefix: Vec<String> = r
            .params
            .iter()
            .map(|(_, p)| param_csv(p))
            .chain(std::iter::once(r.route.to_string()))
            .collect();
        match &r.value {
            Value::Rational(v) => {
                out.push_str(&format!("{},{}\n", prefix.join(","), csv_rational(v)));
            }
            Value::Polynomial(p) => {
                for (i, c) in p.coeffs().iter().enumerate() {
                    out.push_str(&format!("{},{},{}\n", prefix.join(","), i, csv_rational(c)));
                }
            }
        }
    }
    out
}

pub fn records_to_json(records: &[OutputRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("records serialize");
    s.push('\n');
    s
}

/// Verification report as CSV: one row per property, then the erratum row.
pub fn report_to_csv(report: &Report) -> String {
    let mut out = String::from("suite,property,cases,status,detail\n");
    for p in &report.properties {
        let detail = match &p.counterexample {
            None => String::new(),
            Some(c) => {
                let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                format!(
                    "{} {}={} {}={}",
                    params.join(" "),
                    p.compares[0],
                    c.left,
                    p.compares[1],
                    c.right
                )
                .replace(',', ";")
            }
        };
        let status = if p.passed { "pass" } else { "fail" };
        out.push_str(&format!("{},{},{},{},{}\n", p.suite, p.property, p.cases, status, detail));
    }
    if let Some(e) = &report.erratum {
        out.push_str(&format!(
            "mb,{},1,note,n={} N={} k={} generating_function_value={} phi_table_value={}\n",
            e.label, e.n, e.power, e.k, e.generating_function_value, e.phi_table_value
        ));
    }
    out
}

fn parse_x(s: &str) -> Result<Rational, Error> {
    parse_rational(s)
}

fn compute(command: &Command) -> Result<Vec<OutputRecord>, Error> {
    let mut records = Vec::new();
    match *command {
        Command::Bern { max_k } => {
            for k in 0..=max_k as usize {
                records.push(OutputRecord {
                    params: vec![("k", Param::Int(k as u64))],
                    route: "recurrence",
                    value: Value::Rational(bernoulli(k)),
                });
            }
        }
        Command::Mb { n, max_k } => {
            for k in 0..=max_k as usize {
                records.push(OutputRecord {
                    params: vec![("n", Param::Int(n)), ("k", Param::Int(k as u64))],
                    route: "closed_form",
                    value: Value::Rational(mb_number(k, n)?),
                });
            }
        }
        Command::Mbn {
            n,
            power,
            k,
            max_k,
            method,
        } => {
            let method = Method::from(method);
            let ks = match (k, max_k) {
                (Some(k), _) => k..=k,
                (None, Some(m)) => 0..=m,
                (None, None) => unreachable!("clap requires one of --k/--max-k"),
            };
            for k in ks {
                let req = HigherMbRequest::new(k as usize, power as usize, n, method);
                records.push(OutputRecord {
                    params: vec![
                        ("n", Param::Int(n)),
                        ("N", Param::Int(power as u64)),
                        ("k", Param::Int(k as u64)),
                    ],
                    route: method.name(),
                    value: Value::Rational(mb_higher(req)?),
                });
            }
        }
        Command::Psi { n, k, ref x, poly } => {
            let p = psi_poly(k as usize, n)?;
            let route = if n == 1 { "faulhaber" } else { "closed_form" };
            let mut params = vec![("n", Param::Int(n)), ("k", Param::Int(k as u64))];
            let value = match (poly, x) {
                (true, _) => Value::Polynomial(p),
                (false, Some(x)) => {
                    let x = parse_x(x)?;
                    let v = p.eval(&x);
                    params.push(("x", Param::Rational(x)));
                    Value::Rational(v)
                }
                (false, None) => unreachable!("clap requires --x or --poly"),
            };
            records.push(OutputRecord { params, route, value });
        }
        Command::Psiprod {
            n,
            power,
            k,
            ref x,
            poly,
        } => {
            let (p, route) = if n >= 2 {
                (psi_products_poly(k as usize, power as usize, n)?, "stirling_theorem")
            } else {
                (psi_products_conv(k as usize, power as usize, n)?, "convolution")
            };
            let mut params = vec![
                ("n", Param::Int(n)),
                ("N", Param::Int(power as u64)),
                ("k", Param::Int(k as u64)),
            ];
            let value = match (poly, x) {
                (true, _) => Value::Polynomial(p),
                (false, Some(x)) => {
                    let x = parse_x(x)?;
                    let v = p.eval(&x);
                    params.push(("x", Param::Rational(x)));
                    Value::Rational(v)
                }
                (false, None) => unreachable!("clap requires --x or --poly"),
            };
            records.push(OutputRecord { params, route, value });
        }
        Command::Verify { .. } => unreachable!("verify is handled separately"),
    }
    Ok(records)
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Verify {
            suite,
            max_n,
            max_k,
            max_power,
            order,
        } => {
            let bounds = Bounds {
                max_n: *max_n,
                max_k: *max_k,
                max_power: *max_power,
                order: *order,
            };
            match verify::run((*suite).into(), &bounds, cli.jobs) {
                Ok(report) => {
                    let text = match cli.format {
                        Format::Json => {
                            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
                            s.push('\n');
                            s
                        }
                        Format::Csv => report_to_csv(&report),
                    };
                    let _ = out.write_all(text.as_bytes());
                    return if report.passed { EXIT_OK } else { EXIT_VERIFY_FAILED };
                }
                Err(e) => Err(e),
            }
        }
        command => compute(command).map(|records| match cli.format {
            Format::Json => records_to_json(&records),
            Format::Csv => records_to_csv(&records),
        }),
    };
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
