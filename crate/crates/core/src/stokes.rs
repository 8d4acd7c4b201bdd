//! Singulants, Stokes and anti-Stokes lines, and where each exponential
//! is switched on.
//!
//! Every singulant here is linear, `chi(s) = c s`. A Stokes line of `chi`
//! is where `chi` is real and positive, an anti-Stokes line where it is
//! purely imaginary. Angles are measured with the branch cut of `s` on the
//! negative real axis.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::evaluator::RemainderSpec;
use crate::params::SolutionKind;
use crate::precision::{ArithmeticContext, ComplexHP, Real};

/// Relative tolerance for line membership: `|Im chi| < LINE_TOL |chi|`.
pub const LINE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Singulant {
    /// 1-based label.
    pub label: usize,
    /// `c` in `chi(s) = c s`.
    pub slope: ComplexHP,
}

impl Singulant {
    pub fn at(&self, s: &ComplexHP) -> ComplexHP {
        &self.slope * s
    }
}

/// Dominant singulants of one family.
#[derive(Debug, Clone, PartialEq)]
pub struct SingulantSet {
    pub kind: SolutionKind,
    pub entries: Vec<Singulant>,
    /// Value `cosh(-c)` must take for every slope.
    pub cosh_target: ComplexHP,
}

impl SingulantSet {
    pub fn get(&self, label: usize) -> Result<&Singulant> {
        self.entries
            .iter()
            .find(|e| e.label == label)
            .ok_or(Error::InvalidArgument("no singulant with this label"))
    }

    pub fn labels(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.label).collect()
    }

    /// `|cosh(-c) - target|` for each slope; zero up to rounding.
    pub fn eikonal_defects(&self) -> Vec<Real> {
        self.entries
            .iter()
            .map(|e| ((-&e.slope).cosh() - &self.cosh_target).abs())
            .collect()
    }

    /// Smallest `|c|` in the set.
    pub fn min_modulus(&self) -> Real {
        let mut best = self.entries[0].slope.abs();
        for e in &self.entries[1..] {
            let a = e.slope.abs();
            if a < best {
                best = a;
            }
        }
        best
    }
}

/// `ln(2 + sqrt 3)`.
pub(crate) fn ln_two_plus_root3(ctx: &ArithmeticContext) -> Real {
    (ctx.int(2) + ctx.int(3).sqrt()).ln()
}

/// The dominant singulant slopes. Type A: `{i pi/2, -i pi/2}`. Type B:
/// `{log(-2-sqrt3), -log(-2-sqrt3), log(-2+sqrt3), -log(-2+sqrt3)}`,
/// principal logarithm.
pub fn singulants(ctx: &ArithmeticContext, kind: SolutionKind) -> SingulantSet {
    match kind {
        SolutionKind::TypeA => {
            let c = ComplexHP::from_real(ctx.pi() / ctx.int(2)).mul_i();
            SingulantSet {
                kind,
                entries: alloc::vec![
                    Singulant { label: 1, slope: c.clone() },
                    Singulant { label: 2, slope: -c },
                ],
                cosh_target: ctx.czero(),
            }
        }
        SolutionKind::TypeB => {
            let r3 = ctx.int(3).sqrt();
            let l1 = ComplexHP::from_real(-(ctx.int(2) + &r3)).ln().expect("nonzero");
            let l3 = ComplexHP::from_real(&r3 - ctx.int(2)).ln().expect("nonzero");
            SingulantSet {
                kind,
                entries: alloc::vec![
                    Singulant { label: 1, slope: l1.clone() },
                    Singulant { label: 2, slope: -l1 },
                    Singulant { label: 3, slope: l3.clone() },
                    Singulant { label: 4, slope: -l3 },
                ],
                cosh_target: ctx.complex(-2, 0),
            }
        }
    }
}

/// Jump of the Stokes multiplier across each label's Stokes line, from the
/// real-axis side to the far side.
pub fn jump_constants(ctx: &ArithmeticContext, kind: SolutionKind) -> Vec<(usize, ComplexHP)> {
    match kind {
        SolutionKind::TypeA => alloc::vec![(1, ctx.complex(4, 0)), (2, ctx.complex(4, 0))],
        SolutionKind::TypeB => {
            let set = singulants(ctx, kind);
            let k = ComplexHP::from_real(ctx.int(2) * ctx.pi() * ctx.int(3).sqrt());
            let j12 = &k / &set.entries[0].slope;
            let j34 = -(&k / &set.entries[2].slope);
            alloc::vec![(1, j12.clone()), (2, j12), (3, j34.clone()), (4, j34)]
        }
    }
}

/// Opening angle (radians) of the region of validity measured from the
/// positive real axis. Type A: `pi`. Type B: `atan(ln(2+sqrt3)/pi)` in
/// general, `pi` minus that when the real-axis multipliers of labels 1 and
/// 4 vanish.
pub fn sector_angle(ctx: &ArithmeticContext, kind: SolutionKind, special: bool) -> Real {
    match kind {
        SolutionKind::TypeA => ctx.pi(),
        SolutionKind::TypeB => {
            let a = (ln_two_plus_root3(ctx) / ctx.pi()).atan();
            if special {
                ctx.pi() - a
            } else {
                a
            }
        }
    }
}

/// Side of a Stokes line relative to the positive real axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// The side containing the positive real axis.
    Near,
    OnLine,
    Far,
}

/// `arg c + arg s`, not reduced: zero on the Stokes line, with the sign of
/// `arg c` on the near side.
pub(crate) fn unwrapped_angle(slope: &ComplexHP, s: &ComplexHP) -> f64 {
    let (cr, ci) = slope.to_f64();
    let (sr, si) = s.to_f64();
    libm::atan2(ci, cr) + libm::atan2(si, sr)
}

pub(crate) fn side_of(slope: &ComplexHP, s: &ComplexHP) -> Side {
    let chi = slope * s;
    let (re, im) = chi.to_f64();
    let mag = libm::hypot(re, im);
    if im.abs() < LINE_TOL * mag && re > 0.0 {
        return Side::OnLine;
    }
    let theta = unwrapped_angle(slope, s);
    let (_, ci) = slope.to_f64();
    if (theta > 0.0) == (ci > 0.0) {
        Side::Near
    } else {
        Side::Far
    }
}

fn sign_with_tol(x: f64, scale: f64) -> i8 {
    if x.abs() < LINE_TOL * scale {
        0
    } else if x > 0.0 {
        1
    } else {
        -1
    }
}

/// Classification of one singulant at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelClass {
    pub label: usize,
    pub re_sign: i8,
    pub im_sign: i8,
    pub on_stokes: bool,
    pub on_antistokes: bool,
    pub side: Side,
    /// The multiplier is nonzero here.
    pub present: bool,
    /// Present and not exponentially large (`Re chi >= 0`).
    pub active: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StokesPointClass {
    pub labels: Vec<LabelClass>,
}

impl StokesPointClass {
    pub fn get(&self, label: usize) -> Option<&LabelClass> {
        self.labels.iter().find(|l| l.label == label)
    }

    /// No present exponential is growing: the asymptotic form holds here.
    pub fn valid(&self) -> bool {
        self.labels.iter().all(|l| !l.present || l.re_sign >= 0)
    }
}

/// Signs, line flags and activity of every singulant at `s`, with the
/// multiplier values taken from `spec`.
pub fn classify_point(
    set: &SingulantSet,
    spec: &RemainderSpec,
    s: &ComplexHP,
) -> Result<StokesPointClass> {
    if s.on_branch_cut() {
        return Err(Error::BranchCut);
    }
    if spec.kind() != set.kind {
        return Err(Error::InvalidArgument("multiplier state belongs to another family"));
    }
    let mut labels = Vec::with_capacity(set.entries.len());
    for e in &set.entries {
        let (re, im) = e.at(s).to_f64();
        let mag = libm::hypot(re, im);
        let re_sign = sign_with_tol(re, mag);
        let im_sign = sign_with_tol(im, mag);
        let on_stokes = im_sign == 0 && re_sign > 0;
        let on_antistokes = re_sign == 0;
        let side = if on_stokes { Side::OnLine } else { side_of(&e.slope, s) };
        let present = !spec.piecewise(e.label, side)?.is_zero();
        labels.push(LabelClass {
            label: e.label,
            re_sign,
            im_sign,
            on_stokes,
            on_antistokes,
            side,
            present,
            active: present && re_sign >= 0,
        });
    }
    Ok(StokesPointClass { labels })
}

/// Rectangle `[re_min, re_max] x [im_min, im_max]` in the `s`-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let w = Window { re_min, re_max, im_min, im_max };
        let finite = [re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite());
        if !finite || re_min >= re_max || im_min >= im_max {
            return Err(Error::InvalidArgument("window needs finite bounds with min < max"));
        }
        Ok(w)
    }

    /// Grid coordinate `i` of `resolution` along the real axis.
    pub fn re_at(&self, i: usize, resolution: usize) -> f64 {
        lerp(self.re_min, self.re_max, i, resolution)
    }

    pub fn im_at(&self, j: usize, resolution: usize) -> f64 {
        lerp(self.im_min, self.im_max, j, resolution)
    }
}

fn lerp(a: f64, b: f64, i: usize, n: usize) -> f64 {
    if i + 1 == n {
        b
    } else {
        a + (b - a) * (i as f64) / ((n - 1) as f64)
    }
}

/// One grid sample; `class` is `None` at the origin and on the cut.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub re: f64,
    pub im: f64,
    pub class: Option<StokesPointClass>,
}

/// Row `j` (fixed imaginary part) of a grid map.
pub fn grid_row(
    set: &SingulantSet,
    window: &Window,
    resolution: usize,
    spec: &RemainderSpec,
    ctx: &ArithmeticContext,
    j: usize,
) -> Result<Vec<GridPoint>> {
    let im = window.im_at(j, resolution);
    let mut row = Vec::with_capacity(resolution);
    for i in 0..resolution {
        let re = window.re_at(i, resolution);
        let s = ctx.complex_f64(re, im)?;
        let class = if s.on_branch_cut() { None } else { Some(classify_point(set, spec, &s)?) };
        row.push(GridPoint { re, im, class });
    }
    Ok(row)
}

/// `resolution x resolution` classification of `window`, rows ordered by
/// increasing imaginary part.
pub fn grid_map(
    set: &SingulantSet,
    window: &Window,
    resolution: usize,
    spec: &RemainderSpec,
    ctx: &ArithmeticContext,
) -> Result<Vec<GridPoint>> {
    if resolution < 2 {
        return Err(Error::InvalidArgument("grid resolution must be at least 2"));
    }
    let mut out = Vec::with_capacity(resolution * resolution);
    for j in 0..resolution {
        out.extend(grid_row(set, window, resolution, spec, ctx, j)?);
    }
    Ok(out)
}
