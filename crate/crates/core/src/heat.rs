//! Natural-convection heat transfer between air and an isothermal flat surface.
//!
//! Units follow the oven data set: lengths in ft, temperatures in °F, and the
//! air property values as tabulated (their unit system is taken verbatim).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Standard gravity in ft/s².
pub const STANDARD_GRAVITY_FT_S2: f64 = 32.174;

/// Grashof numbers strictly above this use the turbulent correlation.
pub const TURBULENT_GRASHOF: f64 = 1e9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AirProperties {
    /// Specific heat, Btu/(lb·°F).
    pub cp: f64,
    /// Density, lb/ft³.
    pub rho: f64,
    /// Thermal conductivity, Btu/(ft·s·°F).
    pub k: f64,
    /// Volumetric expansion coefficient, 1/°F.
    pub beta: f64,
    /// Dynamic viscosity, lb_f·s/ft².
    pub mu: f64,
    /// Gravitational acceleration, ft/s².
    pub g: f64,
}

impl AirProperties {
    /// Air at the 80 °F reference point used by the oven presets.
    pub const OVEN_AIR: AirProperties = AirProperties {
        cp: 7.731,
        rho: 2.284e-3,
        k: 4.233e-6,
        beta: 1.87e-3,
        mu: 3.852e-7,
        g: STANDARD_GRAVITY_FT_S2,
    };

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("cp", self.cp),
            ("rho", self.rho),
            ("k", self.k),
            ("beta", self.beta),
            ("mu", self.mu),
            ("g", self.g),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidProperty(format!(
                    "air property {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

impl Default for AirProperties {
    fn default() -> Self {
        Self::OVEN_AIR
    }
}

/// Which empirical Nusselt correlation applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NusseltBranch {
    /// `Gr > 1e9`: `0.138 Gr^0.36 (Pr^0.175 - 0.55)^0.25`
    Turbulent,
    /// `Gr <= 1e9`: `0.683 Gr^0.25 Pr^0.25 (Pr / (0.861 + Pr))^0.25`
    Laminar,
}

impl NusseltBranch {
    pub fn for_grashof(gr: f64) -> Self {
        if gr > TURBULENT_GRASHOF {
            NusseltBranch::Turbulent
        } else {
            NusseltBranch::Laminar
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionlessGroup {
    pub gr: f64,
    pub pr: f64,
    pub nu: f64,
}

/// One convective exchange `Q̇ = h·A·(T_i − T_j)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvectionExchange {
    pub h: f64,
    pub area: f64,
    pub t_i: f64,
    pub t_j: f64,
    pub q_rate: f64,
}

impl ConvectionExchange {
    pub fn new(h: f64, area: f64, t_i: f64, t_j: f64) -> Result<Self> {
        if !(h > 0.0 && area > 0.0) {
            return Err(Error::InvalidProperty(format!(
                "convection needs h > 0 and area > 0 (h = {h}, area = {area})"
            )));
        }
        Ok(Self {
            h,
            area,
            t_i,
            t_j,
            q_rate: conv_heat_rate(h, area, t_i, t_j),
        })
    }
}

/// `Gr = D³ ρ² g ΔT β / μ²`.
pub fn grashof(props: &AirProperties, d: f64, delta_t: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::InvalidGeometry(d));
    }
    if !(delta_t >= 0.0) {
        return Err(Error::InvalidProperty(format!(
            "temperature difference must be non-negative, got {delta_t}"
        )));
    }
    Ok(d.powi(3) * props.rho.powi(2) * props.g * delta_t * props.beta / props.mu.powi(2))
}

/// `Pr = μ C_p / k`.
pub fn prandtl(props: &AirProperties) -> f64 {
    props.mu * props.cp / props.k
}

/// Nusselt number from the branch selected by `gr`. `gr == 1e9` takes the laminar branch.
pub fn nusselt(gr: f64, pr: f64) -> Result<f64> {
    if !(gr >= 0.0) || !(pr > 0.0) {
        return Err(Error::CorrelationDomain(format!(
            "need Gr >= 0 and Pr > 0 (Gr = {gr}, Pr = {pr})"
        )));
    }
    match NusseltBranch::for_grashof(gr) {
        NusseltBranch::Turbulent => {
            let base = pr.powf(0.175) - 0.55;
            if base <= 0.0 {
                return Err(Error::CorrelationDomain(format!(
                    "Pr^0.175 - 0.55 = {base} is not positive for Pr = {pr}"
                )));
            }
            Ok(0.138 * gr.powf(0.36) * base.powf(0.25))
        }
        NusseltBranch::Laminar => Ok(0.683 * gr.powf(0.25) * pr.powf(0.25) * (pr / (0.861 + pr)).powf(0.25)),
    }
}

/// `h_c = Nu k / D`.
pub fn htc(nu: f64, k: f64, d: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::InvalidGeometry(d));
    }
    Ok(nu * k / d)
}

/// `Q̇ = h A (T_i − T_j)`, positive when heat flows from `i` to `j`.
pub fn conv_heat_rate(h: f64, area: f64, t_i: f64, t_j: f64) -> f64 {
    h * area * (t_i - t_j)
}

/// Result of running the full Gr → Pr → Nu → h chain for one surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HtcEstimate {
    pub group: DimensionlessGroup,
    pub branch: NusseltBranch,
    pub h: f64,
}

/// Estimates the air-side coefficient for a surface of characteristic length `d`.
pub fn estimate_htc(props: &AirProperties, d: f64, delta_t: f64) -> Result<HtcEstimate> {
    props.validate()?;
    let gr = grashof(props, d, delta_t)?;
    let pr = prandtl(props);
    let nu = nusselt(gr, pr)?;
    Ok(HtcEstimate {
        group: DimensionlessGroup { gr, pr, nu },
        branch: NusseltBranch::for_grashof(gr),
        h: htc(nu, props.k, d)?,
    })
}
