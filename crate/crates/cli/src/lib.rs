//! Request handling and output rendering for the `ccs` command.

use std::fmt;
use std::str::FromStr;

use ccs_core::classes::excess_count;
use ccs_core::{
    parse_ideal, AffineMethod, ChowClass, ClassOptions, ClassReport, Error, FieldElement, FieldSpec, Pipeline, ProjectiveDegrees,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

/// Seed used unless `--seed` or `CCS_SEED` says otherwise.
pub const DEFAULT_SEED: u64 = ccs_core::DEFAULT_SEED;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Segre,
    Fulton,
    Csm,
    Milnor,
    Euler,
    EulerAffine,
    Degrees,
    Excess,
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "segre" => Command::Segre,
            "fulton" | "cf" => Command::Fulton,
            "csm" => Command::Csm,
            "milnor" => Command::Milnor,
            "euler" => Command::Euler,
            "euleraffine" => Command::EulerAffine,
            "degrees" => Command::Degrees,
            "excess" => Command::Excess,
            other => return Err(format!("unknown command `{other}`")),
        })
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Segre => "segre",
            Command::Fulton => "fulton",
            Command::Csm => "csm",
            Command::Milnor => "milnor",
            Command::Euler => "euler",
            Command::EulerAffine => "euleraffine",
            Command::Degrees => "degrees",
            Command::Excess => "excess",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

/// `q` for the rationals, `fp:<p>` for a prime field.
pub fn parse_field(s: &str) -> Result<FieldSpec, String> {
    let s = s.trim();
    if s.is_empty() || s.eq_ignore_ascii_case("q") || s.eq_ignore_ascii_case("qq") {
        return Ok(FieldSpec::Rationals);
    }
    let p = s
        .strip_prefix("fp:")
        .ok_or_else(|| format!("unknown field `{s}` (expected q or fp:<p>)"))?
        .parse::<u64>()
        .map_err(|e| format!("bad characteristic: {e}"))?;
    FieldSpec::prime_field(p).map_err(|e| e.to_string())
}

/// Comma-separated variable names; empty means "infer".
pub fn parse_vars(s: &str) -> Option<Vec<String>> {
    let v: Vec<String> = s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect();
    (!v.is_empty()).then_some(v)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Request {
    pub command: Command,
    pub field: FieldSpec,
    pub vars: Option<Vec<String>>,
    pub seed: u64,
    pub format: Format,
    pub force: bool,
    pub simplify: bool,
    /// Generators, or for `excess` the Segre class as a polynomial in `H`.
    pub generators: String,
    /// `excess` only: degree `d` and ambient dimension `n`.
    pub excess: Option<(i64, usize)>,
}

impl Request {
    pub fn new(command: Command, generators: impl Into<String>) -> Self {
        Request {
            command,
            field: FieldSpec::Rationals,
            vars: None,
            seed: DEFAULT_SEED,
            format: Format::Text,
            force: false,
            simplify: false,
            generators: generators.into(),
            excess: None,
        }
    }
}

/// What a request produced.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Class(ChowClass),
    Integer(BigInt),
    Report(ClassReport),
    Degrees(ProjectiveDegrees),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Failure {
    Parse(String),
    Genericity(String),
    UnsupportedField(String),
    Other(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Genericity(_) => 3,
            Failure::UnsupportedField(_) => 4,
            Failure::Other(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Genericity(m) | Failure::UnsupportedField(m) | Failure::Other(m) => m,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.message())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::UnknownVariable(_) | Error::DuplicateVariable(_) => Failure::Parse(e.to_string()),
            Error::GenericityFailure { .. } => Failure::Genericity(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

/// Parse a class written as a polynomial in `H`, e.g. `11*H^2 - 58*H^3`.
pub fn parse_class(src: &str, n: usize) -> Result<ChowClass, Failure> {
    let ideal = parse_ideal(src, Some(&["H".to_string()]), FieldSpec::Rationals)?;
    let mut coeffs = vec![BigRational::zero(); n + 1];
    if let [p] = ideal.generators() {
        for (m, c) in p.terms() {
            let k = m.0[0] as usize;
            if k > n {
                return Err(Failure::Parse(format!("term H^{k} exceeds ambient dimension {n}")));
            }
            if let FieldElement::Rational(q) = c {
                coeffs[k] = q.clone();
            }
        }
    } else if !ideal.generators().is_empty() {
        return Err(Failure::Parse("expected a single class".into()));
    }
    Ok(ChowClass::new(n, coeffs))
}

fn needs_characteristic_zero(c: Command) -> bool {
    matches!(c, Command::Csm | Command::Milnor | Command::Euler | Command::EulerAffine)
}

pub fn execute(req: &Request) -> Result<Outcome, Failure> {
    if let (Command::Excess, Some((d, n))) = (req.command, req.excess) {
        let s = parse_class(&req.generators, n)?;
        return Ok(Outcome::Integer(excess_count(&s, d)?));
    }
    if req.command == Command::Excess {
        return Err(Failure::Parse("excess needs a degree d and a dimension n".into()));
    }
    if needs_characteristic_zero(req.command) && req.field != FieldSpec::Rationals && !req.force {
        return Err(Failure::UnsupportedField(format!(
            "{} over {} is only meaningful in characteristic zero; pass --force to compute it anyway",
            req.command, req.field
        )));
    }
    let ideal = parse_ideal(&req.generators, req.vars.as_deref(), req.field)?;
    if ideal.ring().nvars() == 0 {
        return Err(Failure::Parse("no variables".into()));
    }
    let pipeline = Pipeline::new(ClassOptions { seed: req.seed, certify: false, simplify: req.simplify });
    let out = match req.command {
        Command::Segre => Outcome::Class(pipeline.segre(&ideal)?),
        Command::Fulton => Outcome::Class(pipeline.fulton(&ideal)?),
        Command::Csm => Outcome::Class(pipeline.csm(&ideal)?),
        Command::Milnor => Outcome::Report(pipeline.milnor(&ideal)?),
        Command::Euler => Outcome::Integer(pipeline.euler(&ideal)?),
        Command::EulerAffine => Outcome::Integer(pipeline.euler_affine(&ideal, AffineMethod::Limit)?),
        Command::Degrees => Outcome::Degrees(pipeline.projective_degrees(&ideal)?),
        Command::Excess => unreachable!(),
    };
    log::info!("{} Groebner bases computed", pipeline.bases_computed());
    Ok(out)
}

fn int_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => json!(i),
        None => json!(v.to_string()),
    }
}

pub fn class_json(c: &ChowClass) -> Value {
    let coeffs: Vec<Value> = match c.integer_coefficients() {
        Ok(v) => v.iter().map(int_json).collect(),
        Err(_) => c.coeffs().iter().map(|q| json!(q.to_string())).collect(),
    };
    json!({ "n": c.n(), "coefficients": coeffs })
}

pub fn report_json(r: &ClassReport) -> Value {
    let mut obj = serde_json::Map::new();
    for (key, val) in [("segre", &r.segre), ("fulton", &r.fulton), ("csm", &r.csm), ("milnor", &r.milnor)] {
        if let Some(c) = val {
            obj.insert(key.into(), class_json(c));
        }
    }
    if let Some(e) = &r.euler {
        obj.insert("euler".into(), int_json(e));
    }
    Value::Object(obj)
}

pub fn outcome_json(o: &Outcome) -> Value {
    match o {
        Outcome::Class(c) => class_json(c),
        Outcome::Integer(e) => json!({ "euler": int_json(e) }),
        Outcome::Report(r) => report_json(r),
        Outcome::Degrees(d) => json!({ "n": d.ambient_dimension(), "degrees": d.g, "map_degree": d.map_degree }),
    }
}

pub fn render(o: &Outcome, format: Format) -> String {
    match format {
        Format::Json => outcome_json(o).to_string(),
        Format::Text => match o {
            Outcome::Class(c) => c.to_string(),
            Outcome::Integer(e) => e.to_string(),
            Outcome::Degrees(d) => d.g.iter().map(u64::to_string).collect::<Vec<_>>().join(", "),
            Outcome::Report(r) => {
                let mut lines = Vec::new();
                for (label, val) in [("Segre class", &r.segre), ("Fulton class", &r.fulton), ("CSM class", &r.csm), ("Milnor class", &r.milnor)] {
                    if let Some(c) = val {
                        lines.push(format!("{label}: {c}"));
                    }
                }
                if let Some(e) = &r.euler {
                    lines.push(format!("Euler characteristic: {e}"));
                }
                lines.join("\n")
            }
        },
    }
}

/// One line of a batch file: `<command>; <vars>; <field>; <generators>`.
/// For `excess` the vars slot holds `d,n` and the generators slot the class.
pub fn parse_batch_line(line: &str, seed: u64) -> Result<Request, Failure> {
    let parts: Vec<&str> = line.splitn(4, ';').collect();
    if parts.len() != 4 {
        return Err(Failure::Parse("expected `<command>; <vars>; <field>; <generators>`".into()));
    }
    let command: Command = parts[0].parse().map_err(Failure::Parse)?;
    let mut req = Request::new(command, parts[3].trim());
    req.seed = seed;
    req.format = Format::Json;
    req.field = parse_field(parts[2]).map_err(Failure::Parse)?;
    if command == Command::Excess {
        let nums: Vec<&str> = parts[1].split(',').map(str::trim).collect();
        let [d, n] = nums[..] else {
            return Err(Failure::Parse("excess expects `d,n` in the variables slot".into()));
        };
        let d = d.parse().map_err(|e| Failure::Parse(format!("bad d: {e}")))?;
        let n = n.parse().map_err(|e| Failure::Parse(format!("bad n: {e}")))?;
        req.excess = Some((d, n));
    } else {
        req.vars = parse_vars(parts[1]);
    }
    Ok(req)
}

/// JSON-lines records for each non-blank, non-comment line of a batch file,
/// tagged by 1-based line number and returned in line order.
pub fn run_batch(src: &str, seed: u64, force: bool) -> Vec<Value> {
    let lines: Vec<(usize, &str)> = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let one = |&(no, line): &(usize, &str)| -> Value {
        let result = parse_batch_line(line, seed).and_then(|mut r| {
            r.force = force;
            execute(&r).map(|o| (r.command, o))
        });
        match result {
            Ok((command, o)) => json!({ "line": no, "command": command.to_string(), "result": outcome_json(&o) }),
            Err(f) => json!({ "line": no, "error": f.message(), "exit_code": f.exit_code() }),
        }
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        lines.par_iter().map(one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        lines.iter().map(one).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields() {
        assert_eq!(parse_field("q").unwrap(), FieldSpec::Rationals);
        assert_eq!(parse_field("fp:32003").unwrap(), FieldSpec::prime_field(32003).unwrap());
        assert!(parse_field("fp:12").is_err());
        assert!(parse_field("r").is_err());
    }

    #[test]
    fn commands_round_trip() {
        for c in ["segre", "fulton", "csm", "milnor", "euler", "euleraffine", "degrees", "excess"] {
            assert_eq!(c.parse::<Command>().unwrap().to_string(), c);
        }
        assert_eq!("CF".parse::<Command>().unwrap(), Command::Fulton);
    }

    #[test]
    fn rendering() {
        let c = ChowClass::from_ints(3, &[0, 0, 3, -10]);
        assert_eq!(render(&Outcome::Class(c.clone()), Format::Text), "3*H^2 - 10*H^3");
        assert_eq!(render(&Outcome::Class(c), Format::Json), r#"{"coefficients":[0,0,3,-10],"n":3}"#);
        assert_eq!(render(&Outcome::Class(ChowClass::zero(2)), Format::Text), "0");
        assert_eq!(render(&Outcome::Integer(BigInt::from(4)), Format::Json), r#"{"euler":4}"#);
    }

    #[test]
    fn failure_codes() {
        assert_eq!(Failure::from(Error::Parse { pos: 0, msg: "x".into() }).exit_code(), 2);
        assert_eq!(Failure::from(Error::GenericityFailure { attempts: 3 }).exit_code(), 3);
        assert_eq!(Failure::from(Error::NotHomogeneous).exit_code(), 1);
    }

    #[test]
    fn vars_lists() {
        assert_eq!(parse_vars(""), None);
        assert_eq!(parse_vars("x, y"), Some(vec!["x".to_string(), "y".to_string()]));
    }
}
