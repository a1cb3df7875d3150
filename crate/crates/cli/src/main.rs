use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use qsymx_core::characters::{ClosedFormCharacter, TruncatedCharacter};
use qsymx_core::composition::{all_compositions, compositions_up_to, Composition};
use qsymx_core::exactnum::{render, Rational};
use qsymx_core::identities::{verify, verify_all, CheckReport, Depth, IdentityId};
use qsymx_core::{Basis, Permutation, QSymElement};

const DEFAULT_MAX_DEGREE: usize = 9;
const HARD_MAX_DEGREE: usize = 14;

#[derive(Parser)]
#[command(name = "qsymx", version, about = "Exact quasi-symmetric functions and their characters")]
struct Cli {
    /// Emit machine-readable JSON instead of aligned text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a character on a basis element or a permutation.
    Eval(EvalArgs),
    /// Multiply two elements.
    Mul {
        #[arg(long, default_value = "M")]
        basis: Basis,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Coproduct of an element.
    Coproduct(ElemArgs),
    /// Antipode of an element.
    Antipode(ElemArgs),
    /// Rewrite an element in another basis.
    Convert {
        #[arg(long)]
        to: Basis,
        /// A bare composition is read in the basis opposite to `--to`.
        #[arg(long)]
        elem: String,
    },
    /// Even/odd decomposition of a character, compared with the closed forms.
    Decompose {
        #[arg(long)]
        degree: usize,
        #[arg(long = "char", default_value = "zeta")]
        character: ClosedFormCharacter,
    },
    /// All values of a character on compositions of one degree.
    Table {
        #[arg(long = "char")]
        character: ClosedFormCharacter,
        #[arg(long, default_value = "M")]
        basis: Basis,
        #[arg(long)]
        degree: usize,
    },
    /// Check registered identities.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("target").required(true).args(["comp", "perm"])))]
struct EvalArgs {
    #[arg(long = "char")]
    character: ClosedFormCharacter,
    #[arg(long, default_value = "M")]
    basis: Basis,
    #[arg(long)]
    comp: Option<Composition>,
    #[arg(long)]
    perm: Option<Permutation>,
}

#[derive(Args)]
struct ElemArgs {
    /// Basis of the result; inputs in the other basis are converted.
    #[arg(long, default_value = "M")]
    basis: Basis,
    /// An element such as "M[2,1] - 1/2*M[3]", a bare composition, or JSON.
    #[arg(long)]
    elem: String,
}

#[derive(Args)]
#[command(group(ArgGroup::new("which").required(true).args(["id", "all"])))]
struct VerifyArgs {
    #[arg(long)]
    id: Option<IdentityId>,
    #[arg(long)]
    all: bool,
    #[arg(long, default_value = "standard")]
    depth: Depth,
}

/// Outcome of a command: rendered output and whether it signals a mismatch.
struct Output {
    text: String,
    json: Value,
    mismatch: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            mismatch: false,
        }
    }
}

/// A usage or parse error; nothing is printed on stdout.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn max_degree() -> Result<usize, Usage> {
    let Ok(raw) = std::env::var("QSYMX_MAX_DEGREE") else {
        return Ok(DEFAULT_MAX_DEGREE);
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| Usage(format!("QSYMX_MAX_DEGREE must be a non-negative integer, got `{raw}`")))?;
    if n > HARD_MAX_DEGREE {
        eprintln!(
            "warning: QSYMX_MAX_DEGREE={n} capped at {HARD_MAX_DEGREE}; tables grow like 2^(n-1)"
        );
        Ok(HARD_MAX_DEGREE)
    } else {
        if n > DEFAULT_MAX_DEGREE {
            eprintln!("warning: QSYMX_MAX_DEGREE={n}; tables grow like 2^(n-1)");
        }
        Ok(n)
    }
}

fn check_degree(n: usize) -> Result<(), Usage> {
    let max = max_degree()?;
    if n > max {
        return Err(Usage(format!(
            "degree {n} exceeds the truncation bound {max} (set QSYMX_MAX_DEGREE, at most {HARD_MAX_DEGREE})"
        )));
    }
    Ok(())
}

fn parse_element(input: &str, basis: Basis) -> Result<QSymElement, Usage> {
    let s = input.trim();
    let x = if s.starts_with('{') {
        serde_json::from_str::<QSymElement>(s)?
    } else if s.contains('[') || s == "0" {
        s.parse::<QSymElement>()?
    } else {
        QSymElement::basis_element(basis, s.parse::<Composition>()?)
    };
    Ok(x.to_basis(basis))
}

fn comp_json(a: &Composition) -> Value {
    json!(a.parts())
}

fn element_output(x: &QSymElement) -> Output {
    Output::ok(x.to_string(), serde_json::to_value(x).expect("element serializes"))
}

fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    rows.iter()
        .map(|r| {
            let line: Vec<String> = r
                .iter()
                .enumerate()
                .map(|(i, s)| format!("{s:<w$}", w = widths[i]))
                .collect();
            line.join("  ").trim_end().to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn show(a: &Composition) -> String {
    format!("({a})")
}

fn eval(args: EvalArgs) -> Result<Output, Usage> {
    let c = args.character;
    if let Some(sigma) = args.perm {
        let v = c.eval_perm(&sigma)?;
        return Ok(Output::ok(
            render(&v),
            json!({ "char": c.id(), "perm": sigma.word(), "value": render(&v) }),
        ));
    }
    let a = args.comp.expect("clap requires comp or perm");
    let v = c.eval(args.basis, &a);
    Ok(Output::ok(
        render(&v),
        json!({
            "char": c.id(),
            "basis": args.basis.to_string(),
            "comp": comp_json(&a),
            "value": render(&v),
        }),
    ))
}

/// Closed forms of the even and odd parts, when known.
fn closed_parts(c: ClosedFormCharacter) -> Option<(ClosedFormCharacter, ClosedFormCharacter)> {
    use ClosedFormCharacter::*;
    Some(match c {
        Zeta => (ZetaPlus, ZetaMinus),
        ZetaInv => (ZetaInvPlus, ZetaInvMinus),
        ZetaPlus => (ZetaPlus, Counit),
        ZetaInvPlus => (ZetaInvPlus, Counit),
        ZetaMinus => (Counit, ZetaMinus),
        ZetaInvMinus => (Counit, ZetaInvMinus),
        Counit => (Counit, Counit),
        ZetaPower(_) => return None,
    })
}

#[derive(Serialize)]
struct DecomposeRow {
    comp: Vec<usize>,
    plus: String,
    minus: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_plus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_minus: Option<String>,
    mismatch: bool,
}

fn decompose(degree: usize, c: ClosedFormCharacter) -> Result<Output, Usage> {
    check_degree(degree)?;
    let table = c.restrict(degree);
    let (plus, minus) = table.decompose()?;
    let closed = closed_parts(c);
    let value = |t: &TruncatedCharacter, a: &Composition| -> Rational {
        t.value(a).expect("within truncation").clone()
    };
    let mut rows = Vec::new();
    for a in compositions_up_to(degree) {
        let (p, m) = (value(&plus, &a), value(&minus, &a));
        let (cp, cm) = match closed {
            Some((x, y)) => (Some(x.eval_m(&a)), Some(y.eval_m(&a))),
            None => (None, None),
        };
        let mismatch = cp.as_ref().is_some_and(|x| *x != p) || cm.as_ref().is_some_and(|y| *y != m);
        rows.push(DecomposeRow {
            comp: a.parts().to_vec(),
            plus: render(&p),
            minus: render(&m),
            closed_plus: cp.map(|x| render(&x)),
            closed_minus: cm.map(|y| render(&y)),
            mismatch,
        });
    }
    let mismatches = rows.iter().filter(|r| r.mismatch).count();
    let mut text_rows = vec![vec![
        "alpha".to_string(),
        format!("{c}+"),
        format!("{c}-"),
        String::new(),
    ]];
    for r in &rows {
        let a = Composition::new(r.comp.clone()).expect("valid");
        let flag = if r.mismatch {
            format!(
                "MISMATCH closed = {}, {}",
                r.closed_plus.as_deref().unwrap_or("?"),
                r.closed_minus.as_deref().unwrap_or("?")
            )
        } else {
            String::new()
        };
        text_rows.push(vec![show(&a), r.plus.clone(), r.minus.clone(), flag]);
    }
    let summary = match closed {
        Some((x, y)) => format!(
            "{} compositions, {mismatches} differ from the closed forms {x} and {y}",
            rows.len()
        ),
        None => format!("{} compositions, no closed forms to compare", rows.len()),
    };
    let text = format!("{}\n{summary}", aligned(&text_rows));
    let json = json!({
        "char": c.id(),
        "degree": degree,
        "rows": rows,
        "mismatches": mismatches,
    });
    Ok(Output {
        text,
        json,
        mismatch: mismatches > 0,
    })
}

fn table(c: ClosedFormCharacter, basis: Basis, degree: usize) -> Result<Output, Usage> {
    check_degree(degree)?;
    let values: Vec<(Composition, Rational)> = all_compositions(degree)
        .into_iter()
        .map(|a| {
            let v = c.eval(basis, &a);
            (a, v)
        })
        .collect();
    let rows: Vec<Vec<String>> = values
        .iter()
        .map(|(a, v)| vec![format!("{basis}[{a}]"), render(v)])
        .collect();
    let json = json!({
        "char": c.id(),
        "basis": basis.to_string(),
        "degree": degree,
        "values": values
            .iter()
            .map(|(a, v)| json!({ "comp": comp_json(a), "value": render(v) }))
            .collect::<Vec<_>>(),
    });
    Ok(Output::ok(aligned(&rows), json))
}

fn verify_cmd(args: VerifyArgs) -> Output {
    let reports: Vec<CheckReport> = match args.id {
        Some(id) => vec![verify(id, args.depth)],
        None => verify_all(args.depth),
    };
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let mut text: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
    if reports.len() > 1 {
        text.push(format!(
            "{} of {} identities pass at depth {}",
            reports.len() - failed,
            reports.len(),
            args.depth
        ));
    }
    let json = if args.all {
        serde_json::to_value(&reports)
    } else {
        serde_json::to_value(&reports[0])
    }
    .expect("reports serialize");
    Output {
        text: text.join("\n"),
        json,
        mismatch: failed > 0,
    }
}

fn run(cli: Cli) -> Result<Output, Usage> {
    match cli.command {
        Command::Eval(args) => eval(args),
        Command::Mul { basis, left, right } => {
            let x = parse_element(&left, basis)?;
            let y = parse_element(&right, basis)?;
            Ok(element_output(&x.multiply(&y)?))
        }
        Command::Coproduct(a) => {
            let d = parse_element(&a.elem, a.basis)?.coproduct();
            Ok(Output::ok(
                d.to_string(),
                serde_json::to_value(&d).expect("tensor serializes"),
            ))
        }
        Command::Antipode(a) => Ok(element_output(&parse_element(&a.elem, a.basis)?.antipode())),
        Command::Convert { to, elem } => {
            let other = match to {
                Basis::M => Basis::F,
                Basis::F => Basis::M,
            };
            // bare compositions are read in the source basis
            let x = if elem.contains('[') || elem.trim_start().starts_with('{') {
                parse_element(&elem, to)?
            } else {
                parse_element(&elem, other)?.to_basis(to)
            };
            Ok(element_output(&x))
        }
        Command::Decompose { degree, character } => decompose(degree, character),
        Command::Table {
            character,
            basis,
            degree,
        } => table(character, basis, degree),
        Command::Verify(args) => Ok(verify_cmd(args)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json"));
            } else {
                println!("{}", out.text);
            }
            if out.mismatch {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
