//! Born-Infeld constitutive map and the two-charge Coulomb displacement.
//!
//! Geometry: the proton sits at the origin, the electron at `(0, 0, r)`, so
//! the line through the charges is the z-axis. Units are Gaussian with unit
//! charge; the Born parameter `beta` is a length and fields saturate at
//! `1 / beta^2`.

use std::ops::{Add, Mul, Sub};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldError {
    #[error("{name} must be a positive finite number, got {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("non-finite component in ({x}, {y}, {z})")]
    NonFinite { x: f64, y: f64, z: f64 },
    #[error("Coulomb field is singular at ({x}, {y}, {z}): point coincides with a charge")]
    Singularity { x: f64, y: f64, z: f64 },
}

fn positive(name: &'static str, value: f64) -> Result<f64, FieldError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(FieldError::InvalidParameter { name, value })
    }
}

/// Born parameter and proton-electron separation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxialConfig {
    beta: f64,
    r: f64,
}

impl AxialConfig {
    pub fn new(beta: f64, r: f64) -> Result<Self, FieldError> {
        Ok(Self {
            beta: positive("beta", beta)?,
            r: positive("r", r)?,
        })
    }

    /// Configuration from the scale-free ratio `rho = r / beta`.
    pub fn from_rho(beta: f64, rho: f64) -> Result<Self, FieldError> {
        let beta = positive("beta", beta)?;
        Self::new(beta, beta * positive("rho", rho)?)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn rho(&self) -> f64 {
        self.r / self.beta
    }

    pub fn proton(&self) -> Point3 {
        Point3 {
            x: 0.0,
            y: 0.0,
            z: 0.0,
        }
    }

    pub fn electron(&self) -> Point3 {
        Point3 {
            x: 0.0,
            y: 0.0,
            z: self.r,
        }
    }
}

macro_rules! vec3 {
    ($name:ident) => {
        impl $name {
            pub fn new(x: f64, y: f64, z: f64) -> Result<Self, FieldError> {
                if x.is_finite() && y.is_finite() && z.is_finite() {
                    Ok(Self { x, y, z })
                } else {
                    Err(FieldError::NonFinite { x, y, z })
                }
            }

            pub const fn zero() -> Self {
                Self {
                    x: 0.0,
                    y: 0.0,
                    z: 0.0,
                }
            }

            pub fn norm_squared(&self) -> f64 {
                self.x * self.x + self.y * self.y + self.z * self.z
            }

            pub fn norm(&self) -> f64 {
                self.x.hypot(self.y).hypot(self.z)
            }

            pub fn dot(&self, other: &Self) -> f64 {
                self.x * other.x + self.y * other.y + self.z * other.z
            }

            pub fn to_array(self) -> [f64; 3] {
                [self.x, self.y, self.z]
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(self, o: Self) -> Self {
                Self {
                    x: self.x + o.x,
                    y: self.y + o.y,
                    z: self.z + o.z,
                }
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, o: Self) -> Self {
                Self {
                    x: self.x - o.x,
                    y: self.y - o.y,
                    z: self.z - o.z,
                }
            }
        }

        impl Mul<f64> for $name {
            type Output = Self;
            fn mul(self, k: f64) -> Self {
                Self {
                    x: self.x * k,
                    y: self.y * k,
                    z: self.z * k,
                }
            }
        }
    };
}

/// Position in space (length units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Electric field or displacement value (charge / length^2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

vec3!(Point3);
vec3!(FieldVector);

impl Point3 {
    pub fn on_axis(z: f64) -> Self {
        Self { x: 0.0, y: 0.0, z }
    }
}

/// Born-Infeld field map `Z / sqrt(1 + beta^4 |Z|^2)`.
///
/// The magnitude of the result is strictly below `1 / beta^2`.
pub fn f_bi(z: FieldVector, beta: f64) -> FieldVector {
    let b2 = beta * beta;
    let n2 = z.norm_squared();
    let denom = (1.0 + b2 * b2 * n2).sqrt();
    let out = if denom.is_finite() {
        z * (1.0 / denom)
    } else {
        // |Z| beyond ~1e154: the map is saturated, Z / (beta^2 |Z|).
        z * (1.0 / (b2 * z.norm()))
    };
    // Deep in saturation the gap to the bound is below one ulp and rounding
    // can land on or above it; pull the result back inside.
    let m = out.norm() * b2;
    if m >= 1.0 {
        out * ((1.0 - 4.0 * f64::EPSILON) / m)
    } else {
        out
    }
}

/// Superposed Coulomb displacement of the proton (+) and electron (-).
pub fn d_c(s: Point3, cfg: &AxialConfig) -> Result<FieldVector, FieldError> {
    let singular = || FieldError::Singularity {
        x: s.x,
        y: s.y,
        z: s.z,
    };
    let monopole = |d: Point3| -> Result<FieldVector, FieldError> {
        let n = d.norm();
        let c = n * n * n;
        if c == 0.0 {
            return Err(singular());
        }
        let k = 1.0 / c;
        Ok(FieldVector {
            x: d.x * k,
            y: d.y * k,
            z: d.z * k,
        })
    };
    let field = monopole(s - cfg.proton())? - monopole(s - cfg.electron())?;
    FieldVector::new(field.x, field.y, field.z).map_err(|_| singular())
}

/// Composite field `s -> f_bi(d_c(s))`.
pub fn bi_field(s: Point3, cfg: &AxialConfig) -> Result<FieldVector, FieldError> {
    Ok(f_bi(d_c(s, cfg)?, cfg.beta()))
}

/// Axial integrand beyond the electron after `s = x r`, for `x >= 1`.
///
/// `(1 - 2x) / sqrt(rho^4 x^4 (x-1)^4 + (1 - 2x)^2)`, valued in `[-1, 0)`.
/// By mirror symmetry it also covers `x <= 0` through `x -> 1 - x`.
pub fn integrand_outer(x: f64, rho: f64) -> f64 {
    let q = 1.0 - 2.0 * x;
    let p = rho * x * (x - 1.0);
    q / (p * p).hypot(q)
}

/// Axial integrand between the charges, for `1/2 <= x <= 1`.
///
/// `(2x^2 - 2x + 1) / sqrt(rho^4 x^4 (x-1)^4 + (2x^2 - 2x + 1)^2)`, valued in
/// `(0, 1]`. Symmetric about `x = 1/2`.
pub fn integrand_inner(x: f64, rho: f64) -> f64 {
    let q = 2.0 * x * x - 2.0 * x + 1.0;
    let p = rho * x * (x - 1.0);
    q / (p * p).hypot(q)
}

/// Default finite-difference step: `1e-4 * min(r, |s - s_e|, |s - s_p|)`.
pub fn default_curl_step(s: Point3, cfg: &AxialConfig) -> f64 {
    let dp = (s - cfg.proton()).norm();
    let de = (s - cfg.electron()).norm();
    1e-4 * cfg.r().min(dp).min(de)
}

/// Central-difference curl of [`bi_field`] at `s` with step `h`.
pub fn curl_probe(s: Point3, cfg: &AxialConfig, h: f64) -> Result<FieldVector, FieldError> {
    positive("h", h)?;
    let at = |dx: f64, dy: f64, dz: f64| {
        bi_field(
            Point3 {
                x: s.x + dx,
                y: s.y + dy,
                z: s.z + dz,
            },
            cfg,
        )
    };
    let (xp, xm) = (at(h, 0.0, 0.0)?, at(-h, 0.0, 0.0)?);
    let (yp, ym) = (at(0.0, h, 0.0)?, at(0.0, -h, 0.0)?);
    let (zp, zm) = (at(0.0, 0.0, h)?, at(0.0, 0.0, -h)?);
    let inv = 0.5 / h;

    // curl F = (dFz/dy - dFy/dz, dFx/dz - dFz/dx, dFy/dx - dFx/dy)
    Ok(FieldVector {
        x: ((yp.z - ym.z) - (zp.y - zm.y)) * inv,
        y: ((zp.x - zm.x) - (xp.z - xm.z)) * inv,
        z: ((xp.y - xm.y) - (yp.x - ym.x)) * inv,
    })
}

/// One Richardson step on [`curl_probe`]: `(4 C(h/2) - C(h)) / 3`, fourth
/// order in `h`.
pub fn curl_probe_richardson(
    s: Point3,
    cfg: &AxialConfig,
    h: f64,
) -> Result<FieldVector, FieldError> {
    let coarse = curl_probe(s, cfg, h)?;
    let fine = curl_probe(s, cfg, 0.5 * h)?;
    Ok((fine * 4.0 - coarse) * (1.0 / 3.0))
}
