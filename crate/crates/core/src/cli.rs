//! Command-line front end. Boolean queries exit with 0 for true and 1 for false; usage
//! and parse errors exit with 2.

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::concrete::{
    complete_to_permutation, conjugacy_witness, even_adjust_witness, factor_into_conjugates, merge_witness,
    parity_effect, relate_witness, split_witness, Bijection, Coimage, ComposedMap, DressedMap, FinitaryPerm,
    Witnesses, DEFAULT_WINDOW,
};
use crate::cycletype::CycleType;
use crate::harness::{run_suite, Suite, SuiteConfig};
use crate::numonoid::NumericalMonoid;
use crate::parse::ParseError;
use crate::submonoid::SubmonoidDescriptor;

#[derive(Parser, Debug)]
#[command(name = "injclass", version, about = "Cycle types, dressed injective maps and normal submonoids")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Verification window: points 0..N.
    #[arg(long, global = true, default_value_t = DEFAULT_WINDOW)]
    window: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cycle type queries; types are written `ct(open=E,fwd=E,default=E,LEN:E,...)`.
    #[command(subcommand)]
    Type(TypeCmd),
    /// Numerical monoids, written `nm(g1,g2,...)`.
    #[command(subcommand)]
    Monoid(MonoidCmd),
    /// Dressed maps `dmap(p=PERM,t=CT,q=PERM)` and finitary permutations `perm((a b)(c d e))`.
    #[command(subcommand)]
    Map(MapCmd),
    /// Submonoid descriptors `units=U; nm(..); class(REL, CT); ...; inf=yes|no`.
    #[command(subcommand)]
    Sub(SubCmd),
    /// Run a randomized property suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum TypeCmd {
    /// Check validity and print the normal form.
    Validate { ty: String },
    /// Whether two types are conjugate (equal).
    Conj { a: String, b: String },
    /// Number of points outside the image.
    Coimage { ty: String },
    /// Position among identity, even/odd finitary and infinitary permutations.
    SymClass { ty: String },
    /// The finitary relation.
    Finrel { a: String, b: String },
    /// Parity of the total count difference of two finitely related types.
    Parity { a: String, b: String },
    /// The even relation.
    Evenrel { a: String, b: String },
    /// Type after cutting an n-cycle off an infinite cycle.
    Split { ty: String, n: u64 },
    /// Type after splicing an n-cycle into an infinite cycle.
    Merge { ty: String, n: u64 },
    /// Type of the inverse permutation.
    Invert { ty: String },
    /// Classification bucket.
    Kind { ty: String },
}

#[derive(Subcommand, Debug)]
enum MonoidCmd {
    /// The monoid generated by the given integers.
    Generate { gens: Vec<u64> },
    /// Minimal generating set.
    Mingens { monoid: String },
    /// Membership.
    Contains { monoid: String, n: u64 },
    /// Whether n is a minimal generator.
    IsMinGen { monoid: String, n: u64 },
    /// Whether n is a sum of two nonzero elements.
    Nongen { monoid: String, n: u64 },
    /// Greatest common divisor of the elements.
    Gcd { monoid: String },
    /// Conductor of the monoid divided by its gcd.
    Conductor { monoid: String },
}

#[derive(Subcommand, Debug)]
enum MapCmd {
    /// Values at 0..count; several maps are composed left to right.
    Eval {
        #[arg(required = true)]
        maps: Vec<String>,
        #[arg(long, default_value_t = 16)]
        count: u64,
    },
    /// The preimage of a point, or `none`; several maps are composed left to right.
    Preimage {
        y: u64,
        #[arg(required = true)]
        maps: Vec<String>,
    },
    /// The exact cycle type.
    Type { map: String },
    /// Points outside the image (at most `limit`).
    Coimage {
        map: String,
        #[arg(long, default_value_t = 16)]
        limit: usize,
    },
    /// Coimage of a composite applied left to right.
    Compose {
        #[arg(required = true)]
        maps: Vec<String>,
        #[arg(long, default_value_t = 16)]
        limit: usize,
    },
    /// The conjugate a·m·a⁻¹.
    Conjugate { map: String, perm: String },
    /// Values of the inverse of a dressed permutation at 0..count.
    Inverse {
        map: String,
        #[arg(long, default_value_t = 16)]
        count: u64,
    },
    /// Values at 0..count of a conjugacy witness from m1 to m2.
    ConjWitness {
        m1: String,
        m2: String,
        #[arg(long, default_value_t = 16)]
        count: u64,
    },
    /// Values at 0..count of a permutation h with f·h = g.
    Complete {
        f: String,
        g: String,
        #[arg(long, default_value_t = 16)]
        count: u64,
    },
    /// Transposition cutting an n-cycle off an infinite cycle.
    Split { map: String, n: u64 },
    /// Transposition splicing an n-cycle into an infinite cycle.
    Merge { map: String, n: u64 },
    /// Total count change caused by a transposition.
    ParityEffect { map: String, perm: String },
    /// Even permutation with the same effect as an odd one.
    EvenAdjust { map: String, perm: String },
    /// Transpositions relating g to a conjugate of f.
    Relate {
        f: String,
        g: String,
        #[arg(long)]
        even: bool,
    },
    /// Whether a map of type h is a product of conjugates of maps of types f and g.
    Factor { f: String, g: String, h: String },
}

#[derive(Subcommand, Debug)]
enum SubCmd {
    /// Print violations one per line.
    Validate { descriptor: String },
    /// Whether maps of the type belong.
    Member { descriptor: String, ty: String },
    /// The least normal submonoid containing the generators.
    Generate {
        /// Permutation type in the units.
        #[arg(long = "units")]
        units: Vec<String>,
        /// Type with finite nonzero coimage.
        #[arg(long = "fin")]
        fin: Vec<String>,
        /// Include the maps with infinite coimage.
        #[arg(long)]
        infinity: bool,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

/// Result of a command: text and JSON renderings plus the exit code.
struct Outcome {
    text: String,
    json: Value,
    code: i32,
}

impl Outcome {
    fn text(text: impl Into<String>, json: Value) -> Self {
        Outcome { text: text.into(), json, code: 0 }
    }

    fn boolean(b: bool) -> Self {
        Outcome { text: b.to_string(), json: json!({ "result": b }), code: if b { 0 } else { 1 } }
    }
}

struct Failure(String);

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure(e.to_string())
    }
}

fn fail(e: impl std::fmt::Display) -> Failure {
    Failure(format!("error: {e}"))
}

fn parse<T: FromStr<Err = ParseError>>(what: &str, s: &str) -> Result<T, Failure> {
    s.parse().map_err(|e: ParseError| Failure(format!("{what}: {e}")))
}

fn ty(s: &str) -> Result<CycleType, Failure> {
    let t: CycleType = parse("cycle type", s)?;
    t.validate().map_err(fail)?;
    Ok(t)
}

fn join(v: impl IntoIterator<Item = impl ToString>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn values(count: u64, f: impl Fn(u64) -> u64) -> Outcome {
    let v: Vec<u64> = (0..count).map(f).collect();
    Outcome::text(join(&v), json!(v))
}

fn type_out(t: &CycleType) -> Outcome {
    Outcome::text(t.to_string(), json!({ "type": t.to_string() }))
}

fn coimage_out(c: Coimage, limit: usize) -> Outcome {
    let size = c.size();
    let points: Vec<u64> = match c {
        Coimage::Finite(mut v) => {
            v.sort_unstable();
            v.into_iter().take(limit).collect()
        }
        Coimage::Infinite(it) => it.take(limit).collect(),
    };
    Outcome::text(format!("{size}: {}", join(&points)), json!({ "size": size.to_string(), "points": points }))
}

/// Parses `argv` (including the program name), runs the command and writes its output.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let _ = if cli.json { writeln!(out, "{}", o.json) } else { writeln!(out, "{}", o.text.trim_end()) };
            o.code
        }
        Err(Failure(msg)) => {
            let _ = if cli.json { writeln!(err, "{}", json!({ "error": msg })) } else { writeln!(err, "{msg}") };
            2
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Type(c) => type_cmd(c),
        Command::Monoid(c) => monoid_cmd(c),
        Command::Map(c) => map_cmd(c, cli.window),
        Command::Sub(c) => sub_cmd(c),
        Command::Verify(v) => {
            let suite: Suite = v.suite.parse().map_err(fail)?;
            let report = run_suite(&SuiteConfig { seed: v.seed, trials: v.trials, window: cli.window, suite });
            let code = if report.ok() { 0 } else { 1 };
            Ok(Outcome { text: report.to_string(), json: serde_json::to_value(&report).expect("report serializes"), code })
        }
    }
}

fn type_cmd(c: &TypeCmd) -> Result<Outcome, Failure> {
    Ok(match c {
        TypeCmd::Validate { ty: t } => type_out(&ty(t)?),
        TypeCmd::Conj { a, b } => Outcome::boolean(ty(a)?.conjugate_equal(&ty(b)?)),
        TypeCmd::Coimage { ty: t } => {
            let c = ty(t)?.coimage();
            Outcome::text(c.to_string(), json!({ "coimage": c.to_string() }))
        }
        TypeCmd::SymClass { ty: t } => {
            let c = ty(t)?.sym_class();
            Outcome::text(c.to_string(), json!({ "class": c.to_string() }))
        }
        TypeCmd::Finrel { a, b } => Outcome::boolean(ty(a)?.approx_fin(&ty(b)?)),
        TypeCmd::Evenrel { a, b } => Outcome::boolean(ty(a)?.approx_even(&ty(b)?)),
        TypeCmd::Parity { a, b } => {
            let r = ty(a)?.parity_sum(&ty(b)?);
            let text = r.parity.map_or("unrelated".to_string(), |p| p.to_string());
            Outcome { text, json: json!(r), code: if r.fin_related { 0 } else { 1 } }
        }
        TypeCmd::Split { ty: t, n } => type_out(&ty(t)?.split_cycle(*n).map_err(fail)?),
        TypeCmd::Merge { ty: t, n } => type_out(&ty(t)?.merge_cycle(*n).map_err(fail)?),
        TypeCmd::Invert { ty: t } => type_out(&ty(t)?.invert_type().map_err(fail)?),
        TypeCmd::Kind { ty: t } => {
            let k = ty(t)?.class_kind();
            Outcome::text(k.to_string(), json!({ "kind": k.to_string() }))
        }
    })
}

fn monoid_cmd(c: &MonoidCmd) -> Result<Outcome, Failure> {
    let nm = |s: &str| parse::<NumericalMonoid>("monoid", s);
    Ok(match c {
        MonoidCmd::Generate { gens } => {
            let m = NumericalMonoid::generate(gens.iter().copied());
            Outcome::text(m.to_string(), json!({ "monoid": m.to_string() }))
        }
        MonoidCmd::Mingens { monoid } => {
            let m = nm(monoid)?;
            Outcome::text(join(m.min_gens()), json!(m.min_gens()))
        }
        MonoidCmd::Contains { monoid, n } => Outcome::boolean(nm(monoid)?.contains(*n)),
        MonoidCmd::IsMinGen { monoid, n } => Outcome::boolean(nm(monoid)?.is_min_gen(*n)),
        MonoidCmd::Nongen { monoid, n } => Outcome::boolean(nm(monoid)?.in_nongenerator_part(*n)),
        MonoidCmd::Gcd { monoid } => {
            let g = nm(monoid)?.gcd();
            Outcome::text(g.to_string(), json!({ "gcd": g }))
        }
        MonoidCmd::Conductor { monoid } => {
            let g = nm(monoid)?.conductor_over_gcd();
            Outcome::text(g.to_string(), json!({ "conductor_over_gcd": g }))
        }
    })
}

fn perm_out(p: &FinitaryPerm) -> Outcome {
    Outcome::text(p.to_string(), json!({ "perm": p.to_string() }))
}

fn composite(maps: &[String]) -> Result<ComposedMap, Failure> {
    let factors = maps.iter().map(|s| parse::<DressedMap>("map", s)).collect::<Result<Vec<_>, _>>()?;
    if factors.is_empty() {
        return Err(Failure("error: expected at least one map".into()));
    }
    Ok(ComposedMap::new(factors))
}

fn map_cmd(c: &MapCmd, window: u64) -> Result<Outcome, Failure> {
    let dm = |s: &str| parse::<DressedMap>("map", s);
    let pm = |s: &str| parse::<FinitaryPerm>("permutation", s);
    Ok(match c {
        MapCmd::Eval { maps, count } => {
            let m = composite(maps)?;
            values(*count, |x| m.eval(x))
        }
        MapCmd::Preimage { y, maps } => {
            let p = composite(maps)?.preimage(*y);
            Outcome { text: p.map_or("none".into(), |x| x.to_string()), json: json!({ "preimage": p }), code: 0 }
        }
        MapCmd::Type { map } => type_out(&dm(map)?.exact_type()),
        MapCmd::Coimage { map, limit } => coimage_out(dm(map)?.coimage_points(), *limit),
        MapCmd::Compose { maps, limit } => coimage_out(composite(maps)?.coimage_points(), *limit),
        MapCmd::Conjugate { map, perm } => {
            let m = dm(map)?.conjugate(&pm(perm)?);
            Outcome::text(m.to_string(), json!({ "map": m.to_string() }))
        }
        MapCmd::Inverse { map, count } => {
            let inv = dm(map)?.inverse().ok_or_else(|| fail("the map is not a permutation"))?;
            values(*count, |x| inv.eval(x))
        }
        MapCmd::ConjWitness { m1, m2, count } => {
            let w = conjugacy_witness(&dm(m1)?, &dm(m2)?).ok_or_else(|| fail("the maps are not conjugate"))?;
            values(*count, |x| w.apply(x))
        }
        MapCmd::Complete { f, g, count } => {
            let h = complete_to_permutation(&dm(f)?, &dm(g)?).map_err(fail)?;
            values(*count, |x| h.apply(x))
        }
        MapCmd::Split { map, n } => perm_out(&split_witness(&dm(map)?, *n).map_err(fail)?),
        MapCmd::Merge { map, n } => perm_out(&merge_witness(&dm(map)?, *n).map_err(fail)?),
        MapCmd::ParityEffect { map, perm } => {
            let a = parity_effect(&dm(map)?, &pm(perm)?).map_err(fail)?;
            Outcome::text(a.to_string(), json!({ "effect": a }))
        }
        MapCmd::EvenAdjust { map, perm } => perm_out(&even_adjust_witness(&dm(map)?, &pm(perm)?).map_err(fail)?),
        MapCmd::Relate { f, g, even } => match relate_witness(&dm(f)?, &dm(g)?, *even).map_err(fail)? {
            None => Outcome { text: "none".into(), json: json!({ "related": false }), code: 1 },
            Some(rel) => {
                let ts: Vec<String> = rel.transpositions.iter().map(ToString::to_string).collect();
                Outcome::text(
                    format!("{}\n{}", ts.len(), ts.join("\n")),
                    json!({ "related": true, "transpositions": ts, "adjusted": rel.adjusted.to_string() }),
                )
            }
        },
        MapCmd::Factor { f, g, h } => {
            let r = factor_into_conjugates(&ty(f)?, &ty(g)?, &ty(h)?, window).map_err(fail)?;
            let (status, detail) = match &r.witnesses {
                Witnesses::NotApplicable => ("none", String::new()),
                Witnesses::Unsupported(why) => ("unsupported", why.clone()),
                Witnesses::Found(w) => ("verified", format!("on 0..{window}; f={} g={}", w.f, w.g)),
            };
            Outcome {
                text: format!("{}\nwitnesses: {status} {detail}", r.decision),
                json: json!({ "decision": r.decision, "witnesses": status, "detail": detail }),
                code: if r.decision { 0 } else { 1 },
            }
        }
    })
}

fn sub_cmd(c: &SubCmd) -> Result<Outcome, Failure> {
    let desc = |s: &str| parse::<SubmonoidDescriptor>("descriptor", s);
    Ok(match c {
        SubCmd::Validate { descriptor } => {
            let v = desc(descriptor)?.violations();
            let lines: Vec<String> = v.iter().map(ToString::to_string).collect();
            Outcome {
                text: if lines.is_empty() { "ok".into() } else { lines.join("\n") },
                json: json!({ "ok": lines.is_empty(), "violations": lines }),
                code: if lines.is_empty() { 0 } else { 1 },
            }
        }
        SubCmd::Member { descriptor, ty: t } => Outcome::boolean(desc(descriptor)?.member(&ty(t)?).map_err(fail)?),
        SubCmd::Generate { units, fin, infinity } => {
            let units = units.iter().map(|s| ty(s)).collect::<Result<Vec<_>, _>>()?;
            let fin = fin.iter().map(|s| ty(s)).collect::<Result<Vec<_>, _>>()?;
            let d = SubmonoidDescriptor::generate(&units, &fin, *infinity).map_err(fail)?;
            Outcome::text(d.to_string(), json!({ "descriptor": d.to_string() }))
        }
    })
}
