//! Stokes-map grid CSV: `re,im`, then five columns per singulant label and
//! a final `valid` column. Points at the origin or on the branch cut carry
//! `NA` throughout.

use dpainleve_core::{ArithmeticContext, GridPoint, RemainderSpec, SingulantSet, Window};

use super::header::Header;
use crate::error::{CliError, Result};

const FORMAT: &str = "stokes-map";

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

pub fn write_grid(
    ctx: &ArithmeticContext,
    set: &SingulantSet,
    spec: &RemainderSpec,
    window: &Window,
    resolution: usize,
    points: &[GridPoint],
) -> Result<Vec<u8>> {
    let digits = 17;
    let mut h = Header::new(FORMAT, ctx);
    h.push("type", set.kind);
    h.push("window", format!("{},{},{},{}", window.re_min, window.re_max, window.im_min, window.im_max));
    h.push("resolution", resolution);
    for e in &set.entries {
        h.push_complex(&format!("chi{}_slope", e.label), &e.slope, digits);
    }
    for m in spec.entries() {
        h.push_complex(&format!("S{}_near", m.label), &m.near, digits);
        h.push_complex(&format!("S{}_far", m.label), &m.far, digits);
    }
    let labels = set.labels();
    let mut out = h.render().into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        let mut head = vec!["re".to_string(), "im".to_string()];
        for l in &labels {
            for col in ["re_sign", "im_sign", "on_stokes", "on_antistokes", "active"] {
                head.push(format!("chi{l}_{col}"));
            }
        }
        head.push("valid".into());
        w.write_record(&head)?;
        for p in points {
            let mut row = vec![p.re.to_string(), p.im.to_string()];
            match &p.class {
                None => row.extend(std::iter::repeat_n("NA".to_string(), labels.len() * 5 + 1)),
                Some(c) => {
                    for l in &labels {
                        let lc = c
                            .get(*l)
                            .ok_or_else(|| CliError::Format(format!("label {l} missing from classification")))?;
                        row.push(lc.re_sign.to_string());
                        row.push(lc.im_sign.to_string());
                        row.push(flag(lc.on_stokes).into());
                        row.push(flag(lc.on_antistokes).into());
                        row.push(flag(lc.active).into());
                    }
                    row.push(flag(c.valid()).into());
                }
            }
            w.write_record(&row)?;
        }
        w.flush().map_err(CliError::Stdout)?;
    }
    Ok(out)
}
