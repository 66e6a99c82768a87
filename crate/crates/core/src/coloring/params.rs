use crate::error::{Error, Result};

/// Step sizes of the construction.
///
/// `big_step = Δ^{r-1} + small_step`, with `small_step = ⌈Δ^{r-4/3} ln²Δ⌉`
/// unless it was escalated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    pub r: u32,
    pub delta: usize,
    /// K
    pub big_step: u64,
    /// k
    pub small_step: u64,
}

fn validate(delta: usize, r: u32) -> Result<u64> {
    if delta < 2 {
        return Err(Error::DegenerateGraph { max_degree: delta });
    }
    if r < 2 {
        return Err(Error::RadiusTooSmall { r, min: 2 });
    }
    (delta as u64).checked_pow(r - 1).ok_or(Error::ParamsTooLarge { delta, r })
}

/// `Δ^{r-4/3} ln²Δ` in double precision.
fn log_term(delta: usize, r: u32) -> f64 {
    let d = delta as f64;
    let ln = libm::log(d);
    libm::pow(d, r as f64 - 4.0 / 3.0) * ln * ln
}

/// `⌈a·y + b⌉` computed exactly from the binary expansion of `y ≥ 0`.
fn exact_ceil_affine(y: f64, a: u128, b: u128) -> Option<u128> {
    if !(y.is_finite() && y >= 0.0) {
        return None;
    }
    if y == 0.0 {
        return Some(b);
    }
    let bits = y.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i32;
    let (mantissa, exp) = if raw_exp == 0 {
        (bits & ((1 << 52) - 1), -1074)
    } else {
        ((bits & ((1 << 52) - 1)) | (1 << 52), raw_exp - 1075)
    };
    let scaled = a.checked_mul(mantissa as u128)?;
    if exp >= 0 {
        return scaled.checked_shl(exp as u32).filter(|v| v >> exp == scaled)?.checked_add(b);
    }
    let shift = (-exp) as u32;
    if shift >= 120 {
        // y < 2^-67: a·y is below any integer step that matters here
        return Some(b + (scaled > 0) as u128);
    }
    let whole = scaled >> shift;
    let rem = scaled & ((1u128 << shift) - 1);
    whole.checked_add(b)?.checked_add((rem != 0) as u128)
}

impl Params {
    pub fn derive(delta: usize, r: u32) -> Result<Self> {
        validate(delta, r)?;
        let k = exact_ceil_affine(log_term(delta, r), 1, 0)
            .and_then(|k| u64::try_from(k).ok())
            .ok_or(Error::ParamsTooLarge { delta, r })?;
        Self::with_small_step(delta, r, k)
    }

    /// Params with an explicit `k`; `K` still equals `Δ^{r-1} + k`.
    pub fn with_small_step(delta: usize, r: u32, small_step: u64) -> Result<Self> {
        let base = validate(delta, r)?;
        if small_step == 0 {
            return Err(Error::ParameterOutOfRange("small step must be at least 1"));
        }
        // K, and 2K + k + 1 must fit.
        let big_step = base
            .checked_add(small_step)
            .filter(|&k| k.checked_mul(2).and_then(|c| c.checked_add(small_step + 1)).is_some())
            .ok_or(Error::ParamsTooLarge { delta, r })?;
        Ok(Params { r, delta, big_step, small_step })
    }

    /// The same `(Δ, r)` with `k` doubled.
    pub fn escalated(&self) -> Result<Self> {
        let k = self
            .small_step
            .checked_mul(2)
            .ok_or(Error::ParamsTooLarge { delta: self.delta, r: self.r })?;
        Self::with_small_step(self.delta, self.r, k)
    }

    /// `Δ^{r-1}`
    pub fn base(&self) -> u64 {
        self.big_step - self.small_step
    }

    /// Edge colours lie in `[1, 2K + k + 1]`.
    pub fn palette_cap(&self) -> u64 {
        2 * self.big_step + self.small_step + 1
    }

    /// Vertex colours lie in `[1, K + 1]`.
    pub fn vertex_cap(&self) -> u64 {
        self.big_step + 1
    }
}

/// `(2Δ^{r-1} + 3Δ^{r-4/3} ln²Δ + 4, 3Δ^{r-1})`: the palette bound this
/// construction attains and the earlier `3Δ^{r-1}` bound.
pub fn theorem_bounds(delta: usize, r: u32) -> Result<(f64, u64)> {
    let base = validate(delta, r)?;
    let new = 2.0 * base as f64 + 3.0 * log_term(delta, r) + 4.0;
    let prior = base.checked_mul(3).ok_or(Error::ParamsTooLarge { delta, r })?;
    Ok((new, prior))
}

/// `⌈2Δ^{r-1} + 3Δ^{r-4/3} ln²Δ + 4⌉` as an integer, taking `Δ^{r-4/3} ln²Δ`
/// at the same double-precision value [`Params::derive`] uses for `k`.
///
/// Unlike ceiling the `f64` from [`theorem_bounds`], this stays exact when
/// the bound exceeds 2^53.
pub fn theorem_bound_ceil(delta: usize, r: u32) -> Result<u128> {
    let base = validate(delta, r)? as u128;
    exact_ceil_affine(log_term(delta, r), 3, 4)
        .map(|tail| 2 * base + tail)
        .ok_or(Error::ParamsTooLarge { delta, r })
}
