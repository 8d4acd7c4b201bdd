//! Batch evaluation CSV, one row per point and sequence.

use dpainleve_core::{ArithmeticContext, CoefficientTable, Evaluation, TruncatedApproximation};

use super::header::Header;
use crate::error::{CliError, Result};

const FORMAT: &str = "evaluation";

pub struct EvaluationMeta<'a> {
    pub table: &'a CoefficientTable,
    pub truncation: String,
    pub remainder: bool,
}

pub fn write_evaluations(
    ctx: &ArithmeticContext,
    meta: &EvaluationMeta<'_>,
    rows: &[Evaluation],
    digits: usize,
) -> Result<Vec<u8>> {
    let mut h = Header::new(FORMAT, ctx);
    h.push_family(meta.table.family());
    h.push_params(meta.table.params(), ctx.decimal_digits());
    h.push("truncation", &meta.truncation);
    h.push("remainder", meta.remainder);
    let mut out = h.render().into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record([
            "n_re",
            "n_im",
            "sequence",
            "series_re",
            "series_im",
            "remainder_re",
            "remainder_im",
            "total_re",
            "total_im",
            "terms",
            "omega",
        ])?;
        let cell = |z: &dpainleve_core::ComplexHP| [z.re().to_decimal(digits), z.im().to_decimal(digits)];
        for e in rows {
            for (name, t) in [("u", &e.u), ("v", &e.v)] {
                let TruncatedApproximation { terms, omega, series_value, remainder_value, total } = t;
                let mut row: Vec<String> = cell(&e.n).into();
                row.push(name.into());
                row.extend(cell(series_value));
                row.extend(cell(remainder_value));
                row.extend(cell(total));
                row.push(terms.to_string());
                row.push(omega.as_ref().map(|o| o.to_decimal(digits)).unwrap_or_default());
                w.write_record(&row)?;
            }
        }
        w.flush().map_err(CliError::Stdout)?;
    }
    Ok(out)
}
