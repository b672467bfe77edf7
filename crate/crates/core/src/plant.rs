//! Three-state lumped thermal model of an oven: circulating air, walls and
//! one food item.
//!
//! The air node is driven by `(u − T_air)` with unit coefficient, so the input
//! `u` is a commanded drive temperature in °F rather than a heat quantity. Time
//! is in the model's native units; the tabulated coefficients mix hours and
//! seconds and are used as-is.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heat::{self, AirProperties};
use crate::matrix::Matrix;

pub const PRESET_NAMES: [&str; 3] = ["steak", "chicken", "potato"];

pub const DEFAULT_AMBIENT_F: f64 = 80.0;
pub const DEFAULT_PREHEAT_F: f64 = 400.0;

/// A solid body exchanging heat with the oven air.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceBody {
    pub name: String,
    /// lb
    pub mass: f64,
    /// Btu/(lb·°F)
    pub cp: f64,
    /// Characteristic length for the convection correlation, ft.
    pub char_length: f64,
    /// Contact area with air, ft².
    pub area: f64,
    /// Air-side heat transfer coefficient.
    pub h_air: f64,
}

impl SurfaceBody {
    pub fn heat_capacity(&self) -> f64 {
        self.mass * self.cp
    }

    /// `h·A`, the conductance to the air node.
    pub fn conductance(&self) -> f64 {
        self.h_air * self.area
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass > 0.0 && self.cp > 0.0) {
            return Err(Error::DegenerateBody(self.name.clone()));
        }
        if !(self.area >= 0.0) {
            return Err(Error::InvalidProperty(format!(
                "{}: surface area must be non-negative",
                self.name
            )));
        }
        if self.area > 0.0 && !(self.h_air > 0.0) {
            return Err(Error::InvalidProperty(format!(
                "{}: h_air must be positive when the body touches air",
                self.name
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoodPreset {
    pub body: SurfaceBody,
    pub safe_temp: f64,
    /// Recommended final internal temperature, °F.
    pub target_temp: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OvenSpec {
    pub air: AirProperties,
    /// lb
    pub air_mass: f64,
    pub wall: SurfaceBody,
    /// Initial temperature of everything not preheated, °F.
    pub ambient: f64,
    /// Preheat set point, °F.
    pub preheat: f64,
}

impl OvenSpec {
    /// 26 x 16 x 16 in household oven.
    pub fn standard() -> Self {
        Self {
            air: AirProperties::OVEN_AIR,
            air_mass: 0.283,
            wall: SurfaceBody {
                name: "wall".into(),
                mass: 75.0,
                cp: 0.22,
                char_length: 2.0,
                area: 15.11,
                h_air: 1.069,
            },
            ambient: DEFAULT_AMBIENT_F,
            preheat: DEFAULT_PREHEAT_F,
        }
    }

    pub fn with_temperatures(mut self, ambient: f64, preheat: f64) -> Result<Self> {
        if !(preheat > ambient) {
            return Err(Error::InvalidConfig(format!(
                "preheat ({preheat} °F) must exceed ambient ({ambient} °F)"
            )));
        }
        self.ambient = ambient;
        self.preheat = preheat;
        Ok(self)
    }

    pub fn air_heat_capacity(&self) -> f64 {
        self.air_mass * self.air.cp
    }
}

/// Tabulated internal temperature guidance, °F.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Guideline {
    pub food: &'static str,
    pub safe: f64,
    pub recommended_low: f64,
    pub recommended_high: f64,
}

/// Reference guidance for common foods. Only steak, chicken and potato have model data.
pub const GUIDELINES: [Guideline; 6] = [
    Guideline {
        food: "steak",
        safe: 145.0,
        recommended_low: 130.0,
        recommended_high: 135.0,
    },
    Guideline {
        food: "chicken",
        safe: 165.0,
        recommended_low: 165.0,
        recommended_high: 175.0,
    },
    Guideline {
        food: "turkey",
        safe: 165.0,
        recommended_low: 165.0,
        recommended_high: 175.0,
    },
    Guideline {
        food: "seafood",
        safe: 145.0,
        recommended_low: 130.0,
        recommended_high: 140.0,
    },
    Guideline {
        food: "bread",
        safe: 140.0,
        recommended_low: 180.0,
        recommended_high: 200.0,
    },
    Guideline {
        food: "potato",
        safe: 140.0,
        recommended_low: 200.0,
        recommended_high: 200.0,
    },
];

/// Food parameters for one of the built-in presets.
pub fn food_preset(name: &str) -> Result<FoodPreset> {
    let (mass, cp, d, area, h, safe, target) = match name.to_ascii_lowercase().as_str() {
        "steak" => (0.5, 0.66, 0.5, 0.375, 1.189, 145.0, 135.0),
        "chicken" => (0.5, 0.77, 0.5, 0.375, 1.189, 165.0, 165.0),
        "potato" => (0.375, 0.82, 0.3, 0.256, 1.141, 140.0, 200.0),
        _ => return Err(Error::UnknownPreset { name: name.to_string() }),
    };
    Ok(FoodPreset {
        body: SurfaceBody {
            name: name.to_ascii_lowercase(),
            mass,
            cp,
            char_length: d,
            area,
            h_air: h,
        },
        safe_temp: safe,
        target_temp: target,
    })
}

/// Standard oven plus the named food.
pub fn preset(name: &str) -> Result<(OvenSpec, FoodPreset)> {
    Ok((OvenSpec::standard(), food_preset(name)?))
}

/// Linear time-invariant model `ẋ = A x + B u`, `y = C x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateSpace {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub state_labels: Vec<String>,
    pub input_label: String,
    pub output_label: String,
}

impl StateSpace {
    pub fn new(a: Matrix, b: Matrix, c: Matrix) -> Result<Self> {
        let n = a.rows();
        if !a.is_square() || b.rows() != n || c.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "A {}x{}, B {}x{}, C {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols(),
                c.rows(),
                c.cols()
            )));
        }
        Ok(Self {
            state_labels: (0..n).map(|i| format!("x{i}")).collect(),
            input_label: "u".into(),
            output_label: "y".into(),
            a,
            b,
            c,
        })
    }

    pub fn order(&self) -> usize {
        self.a.rows()
    }

    /// `[B, AB, …, A^{n−1}B]`
    pub fn controllability_matrix(&self) -> Matrix {
        controllability_matrix(&self.a, &self.b)
    }

    /// `[C; CA; …; CA^{n−1}]`
    pub fn observability_matrix(&self) -> Matrix {
        controllability_matrix(&self.a.transpose(), &self.c.transpose()).transpose()
    }
}

pub fn controllability_matrix(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.rows();
    let m = b.cols();
    let mut out = Matrix::zeros(n, n * m);
    let mut block = b.clone();
    for k in 0..n {
        out.set_block(0, k * m, &block);
        block = a * &block;
    }
    out
}

/// Assembles the air/wall/food model with states `(T_air, T_wall, T_food)`.
pub fn build_plant(oven: &OvenSpec, food: &FoodPreset) -> Result<StateSpace> {
    let air_c = oven.air_heat_capacity();
    if !(air_c > 0.0) {
        return Err(Error::DegenerateBody("air".into()));
    }
    oven.wall.validate()?;
    food.body.validate()?;

    let wall_g = oven.wall.conductance();
    let food_g = food.body.conductance();
    let mut a = Matrix::zeros(3, 3);
    a[(0, 0)] = -(1.0 + wall_g / air_c + food_g / air_c);
    a[(0, 1)] = wall_g / air_c;
    a[(0, 2)] = food_g / air_c;
    a[(1, 0)] = wall_g / oven.wall.heat_capacity();
    a[(1, 1)] = -a[(1, 0)];
    a[(2, 0)] = food_g / food.body.heat_capacity();
    a[(2, 2)] = -a[(2, 0)];

    let mut ss = StateSpace::new(a, Matrix::column(&[1.0, 0.0, 0.0]), Matrix::row(&[0.0, 0.0, 1.0]))?;
    ss.state_labels = vec!["T_air".into(), "T_wall".into(), "T_food".into()];
    ss.input_label = "Q_i".into();
    ss.output_label = "T_food".into();
    Ok(ss)
}

/// Replaces the wall and food coefficients with correlation estimates at the given ΔT.
pub fn derive_htc(oven: &mut OvenSpec, food: &mut FoodPreset, delta_t: f64) -> Result<()> {
    oven.wall.h_air = heat::estimate_htc(&oven.air, oven.wall.char_length, delta_t)?.h;
    food.body.h_air = heat::estimate_htc(&oven.air, food.body.char_length, delta_t)?.h;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlantCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlantReport {
    pub checks: Vec<PlantCheck>,
}

impl PlantReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PlantCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

const ROW_SUM_TOL: f64 = 1e-9;

/// Checks the physical structure of a thermal plant: each row of `[A | B]`
/// sums to zero and heat only flows from hot to cold.
pub fn validate_plant(ss: &StateSpace) -> PlantReport {
    let n = ss.order();
    let mut checks = Vec::new();
    for i in 0..n {
        let row: f64 = ss.a.row_slice(i).iter().sum::<f64>() + ss.b.row_slice(i).iter().sum::<f64>();
        let scale = ss.a.row_slice(i).iter().map(|v| v.abs()).sum::<f64>().max(1.0);
        checks.push(PlantCheck {
            name: format!("row {i} of [A|B] sums to zero"),
            passed: row.abs() <= ROW_SUM_TOL * scale,
            detail: format!("sum = {row:e}"),
        });
    }
    let mut bad_offdiag = Vec::new();
    let mut bad_diag = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = ss.a[(i, j)];
            if i != j && v < 0.0 {
                bad_offdiag.push(format!("a[{i}][{j}] = {v}"));
            }
        }
        if !(ss.a[(i, i)] < 0.0) {
            bad_diag.push(format!("a[{i}][{i}] = {}", ss.a[(i, i)]));
        }
    }
    checks.push(PlantCheck {
        name: "off-diagonal entries of A are non-negative".into(),
        passed: bad_offdiag.is_empty(),
        detail: bad_offdiag.join("; "),
    });
    checks.push(PlantCheck {
        name: "diagonal entries of A are negative".into(),
        passed: bad_diag.is_empty(),
        detail: bad_diag.join("; "),
    });
    let neg_b: Vec<String> =
        ss.b.as_slice()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v < 0.0)
            .map(|(i, v)| format!("b[{i}] = {v}"))
            .collect();
    checks.push(PlantCheck {
        name: "entries of B are non-negative".into(),
        passed: neg_b.is_empty(),
        detail: neg_b.join("; "),
    });
    let is_food_output = ss.c.shape() == (1, n) && {
        let mut want = vec![0.0; n];
        want[n - 1] = 1.0;
        ss.c.as_slice() == want.as_slice()
    };
    checks.push(PlantCheck {
        name: "output is the food temperature".into(),
        passed: is_food_output,
        detail: format!("C = {:?}", ss.c.as_slice()),
    });
    PlantReport { checks }
}

/// JSON description of a custom food.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoodConfig {
    pub name: String,
    pub mass_lb: f64,
    pub cp_btu_per_lb_f: f64,
    pub char_length_ft: f64,
    pub surface_area_ft2: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_air: Option<f64>,
    pub target_temp_f: f64,
    pub safe_temp_f: f64,
}

impl FoodConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    /// Converts to a preset. Without `h_air` in the file a ΔT must be supplied
    /// so the coefficient can be estimated from the correlations.
    pub fn into_preset(self, air: &AirProperties, derive_delta_t: Option<f64>) -> Result<FoodPreset> {
        let h_air = match (self.h_air, derive_delta_t) {
            (_, Some(dt)) => heat::estimate_htc(air, self.char_length_ft, dt)?.h,
            (Some(h), None) => h,
            (None, None) => {
                return Err(Error::InvalidConfig(format!(
                    "food '{}' has no h_air; supply it or request correlation-derived coefficients",
                    self.name
                )))
            }
        };
        let preset = FoodPreset {
            body: SurfaceBody {
                name: self.name,
                mass: self.mass_lb,
                cp: self.cp_btu_per_lb_f,
                char_length: self.char_length_ft,
                area: self.surface_area_ft2,
                h_air,
            },
            safe_temp: self.safe_temp_f,
            target_temp: self.target_temp_f,
        };
        preset.body.validate()?;
        Ok(preset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const STEAK_A: [[f64; 3]; 3] = [[-8.587, 7.383, 0.204], [0.979, -0.979, 0.0], [1.351, 0.0, -1.351]];
    const POTATO_A: [[f64; 3]; 3] = [[-8.516, 7.383, 0.134], [0.979, -0.979, 0.0], [0.950, 0.0, -0.950]];

    fn plant(name: &str) -> StateSpace {
        let (oven, food) = preset(name).unwrap();
        build_plant(&oven, &food).unwrap()
    }

    #[test]
    fn steak_preset_values() {
        let (oven, food) = preset("steak").unwrap();
        assert_eq!(food.body.mass, 0.5);
        assert_eq!(food.body.cp, 0.66);
        assert_eq!(food.body.char_length, 0.5);
        assert_eq!(food.body.area, 0.375);
        assert_eq!(food.body.h_air, 1.189);
        assert_eq!(food.target_temp, 135.0);
        assert_eq!(oven.air_mass, 0.283);
        assert_eq!(oven.preheat, 400.0);
        assert_eq!(oven.ambient, 80.0);
    }

    #[test]
    fn potato_preset_values() {
        let food = food_preset("potato").unwrap();
        assert_eq!(
            (
                food.body.mass,
                food.body.cp,
                food.body.char_length,
                food.body.area,
                food.body.h_air
            ),
            (0.375, 0.82, 0.3, 0.256, 1.141)
        );
        assert_eq!(food.target_temp, 200.0);
    }

    #[test]
    fn unknown_preset() {
        let err = preset("bread").unwrap_err();
        assert_eq!(err, Error::UnknownPreset { name: "bread".into() });
        assert!(err.to_string().contains("steak, chicken, potato"));
    }

    #[test]
    fn steak_matrix() {
        let ss = plant("steak");
        assert!(ss.a.max_abs_diff(&Matrix::from_rows(&STEAK_A)) < 5e-3, "{}", ss.a);
        assert_eq!(ss.b, Matrix::column(&[1.0, 0.0, 0.0]));
        assert_eq!(ss.c, Matrix::row(&[0.0, 0.0, 1.0]));
        assert_eq!(ss.state_labels, ["T_air", "T_wall", "T_food"]);
    }

    #[test]
    fn potato_matrix() {
        let ss = plant("potato");
        assert!(ss.a.max_abs_diff(&Matrix::from_rows(&POTATO_A)) < 5e-3, "{}", ss.a);
    }

    #[test]
    fn zero_area_decouples_food() {
        let (oven, mut food) = preset("steak").unwrap();
        food.body.area = 0.0;
        let ss = build_plant(&oven, &food).unwrap();
        assert_eq!(ss.a[(0, 2)], 0.0);
        assert_eq!(ss.a[(2, 0)], 0.0);
        assert_eq!(ss.a.row_slice(2), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn degenerate_body() {
        let (oven, mut food) = preset("chicken").unwrap();
        food.body.mass = 0.0;
        assert_eq!(build_plant(&oven, &food), Err(Error::DegenerateBody("chicken".into())));
    }

    #[test]
    fn validation_passes_for_presets() {
        for name in PRESET_NAMES {
            let report = validate_plant(&plant(name));
            assert!(report.passed(), "{name}: {:?}", report.failures().collect::<Vec<_>>());
        }
        // The printed steak matrix satisfies the identity to its printed precision.
        let row: f64 = STEAK_A[0].iter().sum::<f64>() + 1.0;
        assert!(row.abs() < 1e-12);
    }

    #[test]
    fn tampered_plant_fails_row_sum() {
        let mut ss = plant("steak");
        ss.a[(0, 0)] += 1.0;
        let report = validate_plant(&ss);
        assert!(!report.passed());
        let failed: Vec<_> = report.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(failed, ["row 0 of [A|B] sums to zero"]);
    }

    #[test]
    fn food_config_json() {
        let text = r#"{"name":"tofu","mass_lb":0.4,"cp_btu_per_lb_f":0.9,"char_length_ft":0.25,
            "surface_area_ft2":0.2,"h_air":1.1,"target_temp_f":165,"safe_temp_f":165}"#;
        let cfg = FoodConfig::from_json(text).unwrap();
        let food = cfg.clone().into_preset(&AirProperties::OVEN_AIR, None).unwrap();
        assert_eq!(food.body.h_air, 1.1);
        assert_eq!(food.target_temp, 165.0);
        let round: FoodConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(round, cfg);

        let no_h = r#"{"name":"tofu","mass_lb":0.4,"cp_btu_per_lb_f":0.9,"char_length_ft":0.25,
            "surface_area_ft2":0.2,"target_temp_f":165,"safe_temp_f":165}"#;
        let cfg = FoodConfig::from_json(no_h).unwrap();
        assert!(matches!(
            cfg.clone().into_preset(&AirProperties::OVEN_AIR, None),
            Err(Error::InvalidConfig(_))
        ));
        let derived = cfg.into_preset(&AirProperties::OVEN_AIR, Some(320.0)).unwrap();
        assert!(derived.body.h_air > 0.0);

        assert!(FoodConfig::from_json(r#"{"name":"x"}"#).is_err());
    }

    #[test]
    fn temperatures_must_be_ordered() {
        assert!(OvenSpec::standard().with_temperatures(80.0, 80.0).is_err());
        let oven = OvenSpec::standard().with_temperatures(70.0, 350.0).unwrap();
        assert_eq!((oven.ambient, oven.preheat), (70.0, 350.0));
    }

    #[test]
    fn controllability_shape() {
        let ss = plant("steak");
        let ctrb = ss.controllability_matrix();
        assert_eq!(ctrb.shape(), (3, 3));
        assert_eq!(ctrb.column_vec(0), vec![1.0, 0.0, 0.0]);
        assert_eq!(ctrb.column_vec(1), ss.a.column_vec(0));
        let obsv = ss.observability_matrix();
        assert_eq!(obsv.row_slice(0), &[0.0, 0.0, 1.0]);
        assert_eq!(obsv.row_slice(1), ss.a.row_slice(2));
    }
}
