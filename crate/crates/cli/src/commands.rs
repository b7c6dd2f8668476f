use std::io::Write;

use num_traits::Zero;
use radix_census::census::{census_closed_form, DigitCensus};
use radix_census::mahler_series::{f_c_series, functional_residual};
use radix_census::radix_core::{
    expand as expand_fraction, is_prime, period_preperiod, render_digits, LongDivision,
};
use radix_census::{verify_fc1, verify_fc2, ConjectureReport, Digit, DigitStream, Mode, RadixMode};
use radix_census::{ReducedFraction, StonehamSpec};
use rayon::prelude::*;
use serde_json::json;

use crate::json::{Census, Report, SCHEMA};
use crate::{
    CensusArgs, Context, ExpandArgs, Failure, Format, MahlerArgs, ModeArg, Radix, StonehamArgs,
    VerifyArgs, Which,
};

pub const FC1_MAX_N: u32 = 12;
pub const FC2_MAX_N: u32 = 9;
const DUMP_LINE: usize = 80;

type Out<'a> = &'a mut dyn Write;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn write_json(out: Out, value: &impl serde::Serialize) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, value).map_err(|e| usage(format!("json: {e}")))?;
    writeln!(out)?;
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains(',') {
        format!("\"{s}\"")
    } else {
        s.to_string()
    }
}

fn census_text(c: &DigitCensus) -> String {
    let body: Vec<String> = c.iter().map(|(d, n)| format!("{d}:{n}")).collect();
    format!("{{{}}}", body.join(","))
}

pub fn expand(ctx: &Context, args: &ExpandArgs, out: Out) -> Result<(), Failure> {
    if args.num.is_zero() || args.num >= args.den {
        return Err(usage(format!("{}/{} is not in (0, 1)", args.num, args.den)));
    }
    let f = ReducedFraction::new(args.num.clone(), args.den.clone())?;
    let lengths = period_preperiod(&f, args.base)?;
    let (preperiod, mut period, truncated) = match args.max_digits {
        None => {
            let e = expand_fraction(&f, args.base)?;
            (e.preperiod().to_vec(), e.period().to_vec(), false)
        }
        Some(max) => {
            let total = lengths.preperiod.saturating_add(lengths.period);
            let mut digits = LongDivision::new(&f, args.base)?;
            let pre: Vec<Digit> = digits
                .by_ref()
                .take(lengths.preperiod.min(max) as usize)
                .collect();
            let room = max - pre.len() as u64;
            let per: Vec<Digit> = digits.take(lengths.period.min(room) as usize).collect();
            (pre, per, total > max)
        }
    };
    if lengths.terminating {
        period = if truncated && args.max_digits == Some(preperiod.len() as u64) {
            Vec::new()
        } else {
            vec![0]
        };
    }
    let pre_s = render_digits(&preperiod, args.base);
    let per_s = render_digits(&period, args.base);
    ctx.note(format!("fraction {f}"));
    match ctx.format {
        Format::Text => {
            writeln!(out, "preperiod: {pre_s}")?;
            writeln!(out, "period: {per_s}")?;
            writeln!(out, "preperiod_length: {}", lengths.preperiod)?;
            writeln!(out, "period_length: {}", lengths.period)?;
            writeln!(out, "terminating: {}", lengths.terminating)?;
            if truncated {
                writeln!(out, "truncated: true")?;
            }
        }
        Format::Json => write_json(
            out,
            &json!({
                "schema": SCHEMA,
                "num": f.numerator().to_string(),
                "den": f.denominator().to_string(),
                "base": args.base,
                "preperiod": pre_s,
                "period": per_s,
                "preperiod_length": lengths.preperiod,
                "period_length": lengths.period,
                "terminating": lengths.terminating,
                "truncated": truncated,
            }),
        )?,
        Format::Csv => {
            writeln!(
                out,
                "num,den,base,preperiod,period,preperiod_length,period_length,terminating,truncated"
            )?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                f.numerator(),
                f.denominator(),
                args.base,
                csv_field(&pre_s),
                csv_field(&per_s),
                lengths.preperiod,
                lengths.period,
                lengths.terminating,
                truncated
            )?;
        }
    }
    Ok(())
}

fn brute_census(p: u64, m: u32, base: u32) -> Result<DigitCensus, Failure> {
    let k = p
        .checked_pow(m)
        .ok_or_else(|| usage(format!("{p}^{m} exceeds 64 bits")))?;
    let e = expand_fraction(&ReducedFraction::from_u64(1, k)?, base)?;
    if !e.preperiod().is_empty() {
        return Err(usage(format!("1/{k} has a preperiod in base {base}")));
    }
    Ok(DigitCensus::from_digits(base, e.period())?)
}

fn print_census(
    ctx: &Context,
    args: &CensusArgs,
    label: &str,
    c: &DigitCensus,
    out: Out,
) -> Result<(), Failure> {
    match ctx.format {
        Format::Text => writeln!(out, "{}", census_text(c))?,
        Format::Json => write_json(
            out,
            &json!({
                "schema": SCHEMA,
                "p": args.p,
                "m": args.m,
                "base": args.base,
                "method": label,
                "period_length": c.period_length(),
                "census": Census(c),
            }),
        )?,
        Format::Csv => {
            writeln!(out, "digit,count")?;
            for (d, n) in c.iter() {
                writeln!(out, "{d},{n}")?;
            }
        }
    }
    Ok(())
}

pub fn census(ctx: &Context, args: &CensusArgs, out: Out) -> Result<(), Failure> {
    if !is_prime(args.p) {
        return Err(usage(format!("{} is not prime", args.p)));
    }
    if args.m == 0 {
        return Err(usage("m must be positive"));
    }
    if args.brute {
        let c = brute_census(args.p, args.m, args.base)?;
        return print_census(ctx, args, "brute", &c, out);
    }
    let closed = census_closed_form(args.p, args.m, args.base)?;
    if !args.check {
        return print_census(ctx, args, "closed_form", &closed, out);
    }
    let brute = brute_census(args.p, args.m, args.base)?;
    let agree = closed == brute;
    match ctx.format {
        Format::Text => {
            writeln!(out, "closed_form: {}", census_text(&closed))?;
            writeln!(out, "brute: {}", census_text(&brute))?;
            writeln!(out, "match: {agree}")?;
        }
        Format::Json => write_json(
            out,
            &json!({
                "schema": SCHEMA,
                "p": args.p,
                "m": args.m,
                "base": args.base,
                "period_length": closed.period_length(),
                "closed_form": Census(&closed),
                "brute": Census(&brute),
                "match": agree,
            }),
        )?,
        Format::Csv => {
            writeln!(out, "digit,closed_form,brute")?;
            for d in 0..args.base {
                let (a, b) = (closed.count(d), brute.count(d));
                if a != 0 || b != 0 {
                    writeln!(out, "{d},{a},{b}")?;
                }
            }
        }
    }
    if agree {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "closed form and brute census of 1/{}^{} differ",
            args.p, args.m
        )))
    }
}

pub fn stoneham(ctx: &Context, args: &StonehamArgs, out: Out) -> Result<(), Failure> {
    let spec = StonehamSpec::new(args.b, args.c)?;
    let mode = match args.radix {
        Radix::B => RadixMode::Base,
        Radix::B2 => RadixMode::Squared,
    };
    let radix = mode.radix(&spec)?;
    if radix > 10 {
        return Err(usage(format!("radix {radix} has digits beyond 0-9")));
    }
    let stream = if args.oracle {
        DigitStream::oracle(&spec, mode, args.digits)?
    } else {
        DigitStream::new(&spec, mode, args.digits)?
    };
    eprintln!("path={}", stream.path().label());
    let header = format!(
        "stoneham b={} c={} radix={} count={}",
        args.b,
        args.c,
        mode.label(),
        args.digits
    );
    let mut written = 0u64;
    match ctx.format {
        Format::Text => {
            writeln!(out, "{header}")?;
            let mut line = Vec::with_capacity(DUMP_LINE + 1);
            for d in stream {
                line.push(b'0' + d as u8);
                written += 1;
                if line.len() == DUMP_LINE {
                    line.push(b'\n');
                    out.write_all(&line)?;
                    line.clear();
                }
            }
            if !line.is_empty() {
                line.push(b'\n');
                out.write_all(&line)?;
            }
        }
        Format::Json => {
            let path = stream.path().label();
            let digits: String = stream.map(|d| char::from(b'0' + d as u8)).collect();
            written = digits.len() as u64;
            write_json(
                out,
                &json!({
                    "schema": SCHEMA,
                    "b": args.b,
                    "c": args.c,
                    "radix": mode.label(),
                    "count": args.digits,
                    "path": path,
                    "digits": digits,
                }),
            )?;
        }
        Format::Csv => {
            writeln!(out, "position,digit")?;
            for (i, d) in stream.enumerate() {
                writeln!(out, "{},{d}", i + 1)?;
                written += 1;
            }
        }
    }
    if written != args.digits {
        return Err(usage(format!(
            "stream ended after {written} of {} digits",
            args.digits
        )));
    }
    ctx.note(format!("wrote {written} digits"));
    Ok(())
}

fn thread_cap() -> Result<Option<usize>, Failure> {
    match std::env::var("RADIX_CENSUS_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(usage(format!(
                "RADIX_CENSUS_THREADS={v} is not a positive integer"
            ))),
        },
    }
}

fn report_row(r: &ConjectureReport) -> String {
    format!(
        "{},{},{},{},{},\"{}\",\"{}\",{},{},{},{}",
        r.conjecture.label(),
        r.n,
        r.mode.label(),
        r.range.0,
        r.range.1,
        r.sum,
        r.expected,
        r.part_i_pass,
        r.part_ii_pass,
        r.cross_check_pass,
        r.first_mismatch.map(|k| k.to_string()).unwrap_or_default()
    )
}

pub fn verify(ctx: &Context, args: &VerifyArgs, out: Out) -> Result<(), Failure> {
    let (cap, modes) = match args.which {
        Which::Fc1 => match args.mode {
            Some(ModeArg::Literal) | None => (FC1_MAX_N, vec![Mode::Literal]),
            Some(_) => return Err(usage("fc1 has only the literal reading")),
        },
        Which::Fc2 => match args.mode.unwrap_or(ModeArg::Corrected) {
            ModeArg::Literal => (FC2_MAX_N, vec![Mode::Literal]),
            ModeArg::Corrected => (FC2_MAX_N, vec![Mode::Corrected]),
            ModeArg::Both => (FC2_MAX_N, vec![Mode::Literal, Mode::Corrected]),
        },
    };
    if args.max_n > cap {
        return Err(usage(format!(
            "max-n {} exceeds the supported limit {cap}",
            args.max_n
        )));
    }
    let jobs: Vec<(u32, Mode)> = (0..=args.max_n)
        .flat_map(|n| modes.iter().map(move |&m| (n, m)))
        .collect();
    let which = args.which;
    let run = move || -> Vec<radix_census::Result<ConjectureReport>> {
        jobs.par_iter()
            .map(|&(n, mode)| match which {
                Which::Fc1 => verify_fc1(n),
                Which::Fc2 => verify_fc2(n, mode),
            })
            .collect()
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap()? {
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| usage(format!("thread pool: {e}")))?;
    let reports = pool
        .install(run)
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;

    let failed: Vec<&ConjectureReport> = reports.iter().filter(|r| !r.passed()).collect();
    let label = match which {
        Which::Fc1 => "fc1",
        Which::Fc2 => "fc2",
    };
    let mode_labels: Vec<&str> = modes.iter().map(|m| m.label()).collect();
    match ctx.format {
        Format::Text | Format::Json => {
            for r in &reports {
                write_json(out, &Report::new(r))?;
            }
            let failed_list: Vec<_> = failed
                .iter()
                .map(|r| json!({"n": r.n, "mode": r.mode.label()}))
                .collect();
            write_json(
                out,
                &json!({
                    "schema": SCHEMA,
                    "summary": {
                        "conjecture": label,
                        "modes": mode_labels,
                        "max_n": args.max_n,
                        "checked": reports.len(),
                        "passed": reports.len() - failed.len(),
                        "failed": failed_list,
                    }
                }),
            )?;
        }
        Format::Csv => {
            writeln!(
                out,
                "conjecture,n,mode,start,end,sum,expected,part_i_pass,part_ii_pass,cross_check_pass,first_mismatch"
            )?;
            for r in &reports {
                writeln!(out, "{}", report_row(r))?;
            }
        }
    }
    for r in &reports {
        ctx.note(format!(
            "{label} n={} mode={} sum={} passed={}",
            r.n,
            r.mode,
            r.sum,
            r.passed()
        ));
    }
    if failed.is_empty() {
        Ok(())
    } else {
        let names: Vec<String> = failed
            .iter()
            .map(|r| format!("n={} ({})", r.n, r.mode))
            .collect();
        Err(Failure::Verification(format!(
            "{label} fails at {}",
            names.join(", ")
        )))
    }
}

pub fn mahler(ctx: &Context, args: &MahlerArgs, out: Out) -> Result<(), Failure> {
    let residual = functional_residual(args.c, args.degree)?;
    let first = residual.terms().next().map(|(e, q)| (e, q.to_string()));
    let series = if args.show_series {
        Some(f_c_series(args.c, args.degree)?)
    } else {
        None
    };
    match ctx.format {
        Format::Text => {
            if let Some(s) = &series {
                write!(out, "{s}")?;
            }
            match &first {
                None => writeln!(out, "residual zero through degree {}", args.degree)?,
                Some((e, q)) => writeln!(out, "first nonzero coefficient {e}: {q}")?,
            }
        }
        Format::Json => {
            let mut v = json!({
                "schema": SCHEMA,
                "c": args.c,
                "degree": args.degree,
                "residual_zero": first.is_none(),
                "first_nonzero": first.as_ref().map(|(e, q)| json!({"exponent": e, "coeff": q})),
            });
            if let Some(s) = &series {
                let terms: Vec<_> = s
                    .terms()
                    .map(|(e, q)| json!({"exponent": e, "coeff": q.to_string()}))
                    .collect();
                v["series"] = json!(terms);
            }
            write_json(out, &v)?;
        }
        Format::Csv => {
            writeln!(out, "exponent,coeff,kind")?;
            if let Some(s) = &series {
                for (e, q) in s.terms() {
                    writeln!(out, "{e},{q},series")?;
                }
            }
            for (e, q) in residual.terms() {
                writeln!(out, "{e},{q},residual")?;
            }
        }
    }
    ctx.note(format!("{} residual terms", residual.terms().count()));
    match first {
        None => Ok(()),
        Some((e, q)) => Err(Failure::Verification(format!(
            "residual coefficient {e}: {q}"
        ))),
    }
}
