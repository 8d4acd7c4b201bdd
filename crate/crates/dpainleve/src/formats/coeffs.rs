//! Coefficient tables as CSV: `sequence,m,re,im,exponent`, where the
//! exponent is the power of `s` carried by the monomial.

use dpainleve_core::{CoefficientTable, ComplexHP, Expansion};

use super::header::Header;
use crate::error::{CliError, Result};

const FORMAT: &str = "coefficients";

fn expansion_name(e: Expansion) -> &'static str {
    match e {
        Expansion::HalfPower => "half",
        Expansion::IntegerPower => "integer",
    }
}

fn exponent_text(num: i64, den: i64) -> String {
    format!("{}", num as f64 / den as f64)
}

/// Writes every coefficient with enough digits to re-read it bit for bit
/// (or with `digits` when given).
pub fn write_coefficients(table: &CoefficientTable, digits: Option<usize>) -> Result<Vec<u8>> {
    let ctx = table.context();
    let d = digits.unwrap_or(ctx.decimal_digits());
    let mut h = Header::new(FORMAT, &ctx);
    h.push_family(table.family());
    h.push("expansion", expansion_name(table.expansion()));
    h.push("variant", table.expansion() == Expansion::IntegerPower);
    h.push("max_order", table.max_order());
    h.push_params(table.params(), ctx.decimal_digits());
    let mut out = h.render().into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(["sequence", "m", "re", "im", "exponent"])?;
        for (name, coeffs) in [("u", table.u_coeffs()), ("v", table.v_coeffs())] {
            for (m, a) in coeffs.iter().enumerate() {
                let (num, den) = table.exponent(m);
                w.write_record([
                    name.to_string(),
                    m.to_string(),
                    a.re().to_decimal(d),
                    a.im().to_decimal(d),
                    exponent_text(num, den),
                ])?;
            }
        }
        w.flush().map_err(CliError::Stdout)?;
    }
    Ok(out)
}

/// Inverse of [`write_coefficients`]. Orders must run from 0 without gaps
/// and the exponent column must agree with the expansion.
pub fn read_coefficients(text: &str) -> Result<CoefficientTable> {
    let (h, body) = Header::parse(text)?;
    if h.require("format")? != FORMAT {
        return Err(CliError::Format("not a coefficient table".into()));
    }
    let ctx = h.context()?;
    let params = h.params(&ctx)?;
    let family = h.family()?;
    let expansion = match h.require("expansion")? {
        "half" => Expansion::HalfPower,
        "integer" => Expansion::IntegerPower,
        other => return Err(CliError::Format(format!("unknown expansion '{other}'"))),
    };
    let mut u: Vec<ComplexHP> = Vec::new();
    let mut v: Vec<ComplexHP> = Vec::new();
    let mut r = csv::Reader::from_reader(body.as_bytes());
    for rec in r.records() {
        let rec = rec?;
        if rec.len() != 5 {
            return Err(CliError::Format(format!("expected 5 columns, found {}", rec.len())));
        }
        let m: usize = rec[1].parse().map_err(|_| CliError::Format(format!("bad order '{}'", &rec[1])))?;
        let list = match &rec[0] {
            "u" => &mut u,
            "v" => &mut v,
            other => return Err(CliError::Format(format!("unknown sequence '{other}'"))),
        };
        if m != list.len() {
            return Err(CliError::Format(format!("sequence {} jumps to order {m}", &rec[0])));
        }
        if rec[4] != exponent_text(expansion.two_exponent(m), 2) {
            return Err(CliError::Format(format!("order {m}: exponent {} does not match", &rec[4])));
        }
        list.push(ctx.parse_complex(&rec[2], &rec[3])?);
    }
    Ok(CoefficientTable::from_coefficients(&params, family, expansion, u, v)?)
}
