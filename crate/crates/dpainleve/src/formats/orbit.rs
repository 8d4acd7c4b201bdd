//! Orbit CSV: `n,re,im,pole_flag,residual`. With a complex lattice shift
//! the site is `shift + n`; the shift is recorded in the header.

use dpainleve_core::{ComparisonReport, LatticeSolution};

use super::header::Header;
use crate::error::{CliError, Result};

const FORMAT: &str = "orbit";

pub fn write_orbit(
    orbit: &LatticeSolution,
    report: Option<&ComparisonReport>,
    seeds: &[(&str, String)],
    digits: usize,
) -> Result<Vec<u8>> {
    let ctx = orbit.params.context();
    let mut h = Header::new(FORMAT, &ctx);
    h.push_params(&orbit.params, ctx.decimal_digits());
    h.push_complex("shift", &orbit.shift, ctx.decimal_digits());
    for (k, v) in seeds {
        h.push(k, v);
    }
    h.push("poles", orbit.pole_flags.len());
    h.push("max_defect", format!("{:e}", orbit.max_defect()));
    if let Some(r) = report {
        h.push("expected_exponent", r.expected_exponent);
        match r.fitted_exponent {
            Some(e) => h.push("fitted_exponent", e),
            None => h.push("fitted_exponent", "NA"),
        }
    }
    let mut out = h.render().into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(["n", "re", "im", "pole_flag", "residual"])?;
        for (i, (k, z)) in orbit.values.iter().enumerate() {
            let pole = orbit.pole_flags.contains(k);
            let residual = orbit
                .residuals
                .as_ref()
                .and_then(|r| r[i])
                .map(|r| format!("{r:e}"))
                .unwrap_or_default();
            w.write_record([
                k.to_string(),
                z.re().to_decimal(digits),
                z.im().to_decimal(digits),
                (pole as u8).to_string(),
                residual,
            ])?;
        }
        w.flush().map_err(CliError::Stdout)?;
    }
    Ok(out)
}
