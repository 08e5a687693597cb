//! Input files for the `check` command.
//!
//! UTF-8 text, one binding per line: `name = expression`. Lines starting
//! with `#` and blank lines are skipped. An optional radical extension is
//! declared once as `ext: m, g = <expression>`, after which a binding
//! component in the t^k slot (t^m = g) is written `name.k = expression`;
//! a bare `name` means the t^0 component.
//!
//! Recognized names: `omega_dx omega_dy omega_dz` for the candidate
//! 1-form, `alpha_dx alpha_dy alpha_dz` (all optional, default 0) for the
//! cofactor form, and either `Omega_dydz Omega_dzdx Omega_dxdy` for the
//! 2-form or `field_x field_y field_z` for the vector field it encodes.

use std::collections::BTreeMap;
use std::sync::Arc;

use liouville_core::forms::{vf_to_twoform, CoeffField, OneForm, TwoForm, VectorField3};
use liouville_core::parser::parse_expression;
use liouville_core::radical::{RadicalContext, RadicalElement};
use liouville_core::rat::Rat;
use liouville_core::ratfunc::RatFn;
use liouville_core::report::VerificationReport;

#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for InputError {}

fn err<T>(msg: impl Into<String>) -> Result<T, InputError> {
    Err(InputError(msg.into()))
}

const VARIABLES: [&str; 3] = ["x", "y", "z"];

struct Parsed {
    extension: Option<(u32, RatFn)>,
    /// base name -> component index -> expression
    bindings: BTreeMap<String, BTreeMap<u32, RatFn>>,
}

const KNOWN: [&str; 12] = [
    "omega_dx", "omega_dy", "omega_dz", "alpha_dx", "alpha_dy", "alpha_dz", "Omega_dydz",
    "Omega_dzdx", "Omega_dxdy", "field_x", "field_y", "field_z",
];

fn parse_file(text: &str) -> Result<Parsed, InputError> {
    let mut extension: Option<(u32, RatFn)> = None;
    let mut bindings: BTreeMap<String, BTreeMap<u32, RatFn>> = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |msg: String| format!("line {}: {}", lineno + 1, msg);
        if let Some(rest) = line.strip_prefix("ext:") {
            if extension.is_some() {
                return err(at("duplicate ext declaration".into()));
            }
            let Some((m_text, g_part)) = rest.split_once(',') else {
                return err(at("expected `ext: m, g = <expression>`".into()));
            };
            let m: u32 = m_text
                .trim()
                .parse()
                .map_err(|_| InputError(at(format!("bad extension index `{}`", m_text.trim()))))?;
            if m < 2 {
                return err(at("extension index must be at least 2".into()));
            }
            let Some((g_name, g_expr)) = g_part.split_once('=') else {
                return err(at("expected `g = <expression>` after the index".into()));
            };
            if g_name.trim() != "g" {
                return err(at(format!("expected `g = ...`, found `{}`", g_name.trim())));
            }
            let g = parse_expression(g_expr.trim(), &VARIABLES)
                .map_err(|e| InputError(at(format!("bad radicand: {e}"))))?;
            if g.is_zero() {
                return err(at("radicand must be nonzero".into()));
            }
            extension = Some((m, g));
            continue;
        }
        let Some((name_part, expr_part)) = line.split_once('=') else {
            return err(at("expected `name = expression`".into()));
        };
        let name_full = name_part.trim();
        let (base, comp) = match name_full.split_once('.') {
            Some((b, k)) => {
                let k: u32 = k
                    .parse()
                    .map_err(|_| InputError(at(format!("bad component index in `{name_full}`"))))?;
                (b, k)
            }
            None => (name_full, 0),
        };
        if !KNOWN.contains(&base) {
            return err(at(format!("unknown binding `{base}`")));
        }
        let value = parse_expression(expr_part.trim(), &VARIABLES)
            .map_err(|e| InputError(at(format!("in `{base}`: {e}"))))?;
        if bindings
            .entry(base.to_string())
            .or_default()
            .insert(comp, value)
            .is_some()
        {
            return err(at(format!("duplicate binding `{name_full}`")));
        }
    }
    if let Some((m, _)) = &extension {
        for (name, comps) in &bindings {
            for k in comps.keys() {
                if k >= m {
                    return err(format!(
                        "component `{name}.{k}` exceeds the extension index {m}"
                    ));
                }
            }
        }
    } else {
        for (name, comps) in &bindings {
            if comps.keys().any(|k| *k != 0) {
                return err(format!(
                    "component syntax on `{name}` requires an `ext:` declaration"
                ));
            }
        }
    }
    Ok(Parsed {
        extension,
        bindings,
    })
}

/// Run the integrability-triple check on a parsed input file.
pub fn check_file(text: &str) -> Result<VerificationReport, InputError> {
    let parsed = parse_file(text)?;
    let has = |n: &str| parsed.bindings.contains_key(n);
    let field_given = has("field_x") || has("field_y") || has("field_z");
    let omega_given = has("Omega_dydz") || has("Omega_dzdx") || has("Omega_dxdy");
    if field_given && omega_given {
        return err("give either Omega_* or field_*, not both");
    }
    if !field_given && !omega_given {
        return err("no 2-form: bind Omega_dydz/Omega_dzdx/Omega_dxdy or field_x/field_y/field_z");
    }

    match parsed.extension.clone() {
        None => {
            let get = |n: &str| -> RatFn {
                parsed
                    .bindings
                    .get(n)
                    .and_then(|c| c.get(&0))
                    .cloned()
                    .unwrap_or_else(RatFn::zero)
            };
            let omega = OneForm {
                dx: get("omega_dx"),
                dy: get("omega_dy"),
                dz: get("omega_dz"),
            };
            let alpha = OneForm {
                dx: get("alpha_dx"),
                dy: get("alpha_dy"),
                dz: get("alpha_dz"),
            };
            let big = if field_given {
                vf_to_twoform(&VectorField3 {
                    p: get("field_x"),
                    q: get("field_y"),
                    r: get("field_z"),
                })
            } else {
                TwoForm {
                    dydz: get("Omega_dydz"),
                    dzdx: get("Omega_dzdx"),
                    dxdy: get("Omega_dxdy"),
                }
            };
            liouville_core::forms::check_probsetup(&omega, &alpha, &big)
                .map_err(|e| InputError(format!("{e}")))
        }
        Some((m, g)) => {
            if field_given {
                return err("under an `ext:` declaration, bind the 2-form as Omega_* components");
            }
            let ctx = RadicalContext::new(m, g);
            let get = |n: &str| -> RadicalElement<Rat> {
                lift(&ctx, parsed.bindings.get(n))
            };
            let omega = OneForm {
                dx: get("omega_dx"),
                dy: get("omega_dy"),
                dz: get("omega_dz"),
            };
            let alpha = OneForm {
                dx: get("alpha_dx"),
                dy: get("alpha_dy"),
                dz: get("alpha_dz"),
            };
            let big = TwoForm {
                dydz: get("Omega_dydz"),
                dzdx: get("Omega_dzdx"),
                dxdy: get("Omega_dxdy"),
            };
            liouville_core::forms::check_probsetup(&omega, &alpha, &big)
                .map_err(|e| InputError(format!("{e}")))
        }
    }
}

fn lift(
    ctx: &Arc<RadicalContext<Rat>>,
    comps: Option<&BTreeMap<u32, RatFn>>,
) -> RadicalElement<Rat> {
    let mut el = RadicalElement::zero(ctx);
    if let Some(map) = comps {
        for (k, v) in map {
            let mut term = RadicalElement::from_base(ctx, v.clone());
            for _ in 0..*k {
                term = term.mul(&RadicalElement::radical(ctx));
            }
            el = el.add(&term);
        }
    }
    el
}
