//! Tabular trajectory output as CSV or JSON.
//!
//! Open loop columns: `t,T_air,T_wall,T_food,u`.
//! Closed loop columns: `t,T_air,T_wall,T_food,T_air_hat,T_wall_hat,T_food_hat,u`,
//! where the estimates are plant state minus estimation error and `u` is the
//! plant input `−K x̂ + N r`. Numbers carry 9 significant digits.

use serde::{Deserialize, Serialize};

use crate::control::ClosedLoop;
use crate::error::{Error, Result};
use crate::sim::Trajectory;

pub const SIGNIFICANT_DIGITS: usize = 9;

/// Formats with 9 significant digits: fixed notation for moderate
/// magnitudes, exponent notation otherwise, trailing zeros trimmed.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

/// Rounds to the precision written by [`format_number`].
pub fn round_significant(x: f64) -> f64 {
    format_number(x).parse().expect("formatted number parses")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl TrajectoryTable {
    /// `t`, every state, then `u`. Every `stride`-th sample is kept, plus the last.
    pub fn open_loop(traj: &Trajectory, stride: usize) -> Self {
        let mut columns = vec!["t".to_string()];
        columns.extend(traj.state_labels.iter().cloned());
        columns.push("u".into());
        let rows = sample_indices(traj.len(), stride)
            .map(|k| {
                let mut row = vec![traj.times[k]];
                row.extend_from_slice(&traj.states[k]);
                row.push(traj.input[k]);
                row
            })
            .collect();
        Self { columns, rows }
    }

    /// Plant states, their estimates, and the plant input.
    pub fn closed_loop(traj: &Trajectory, cl: &ClosedLoop, stride: usize) -> Self {
        let n = cl.plant_order();
        let mut columns = vec!["t".to_string()];
        columns.extend(traj.state_labels[..n].iter().cloned());
        columns.extend(traj.state_labels[..n].iter().map(|l| format!("{l}_hat")));
        columns.push("u".into());
        let rows = sample_indices(traj.len(), stride)
            .map(|k| {
                let x = &traj.states[k];
                let mut row = vec![traj.times[k]];
                row.extend_from_slice(&x[..n]);
                row.extend(cl.estimate(x));
                row.push(cl.plant_input(x, traj.input[k]));
                row
            })
            .collect();
        Self { columns, rows }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_number(v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::InvalidConfig("empty CSV".into()))?;
        let columns: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let row: Vec<f64> = line
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::InvalidConfig(format!("CSV row {}: {e}", i + 1)))?;
            if row.len() != columns.len() {
                return Err(Error::InvalidConfig(format!(
                    "CSV row {} has {} fields, header has {}",
                    i + 1,
                    row.len(),
                    columns.len()
                )));
            }
            rows.push(row);
        }
        Ok(Self { columns, rows })
    }

    /// JSON object `{"columns": [...], "rows": [[...], ...]}` at CSV precision.
    pub fn to_json(&self) -> String {
        let rounded = Self {
            columns: self.columns.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|&v| round_significant(v)).collect())
                .collect(),
        };
        let mut s = serde_json::to_string(&rounded).expect("table serializes");
        s.push('\n');
        s
    }
}

fn sample_indices(len: usize, stride: usize) -> impl Iterator<Item = usize> {
    let stride = stride.max(1);
    (0..len)
        .step_by(stride)
        .chain((len > 0 && !(len - 1).is_multiple_of(stride)).then(|| len - 1))
}

/// gnuplot script plotting every column of `csv_name` against `t`.
pub fn gnuplot_script(csv_name: &str, table: &TrajectoryTable, title: &str) -> String {
    let temps: Vec<usize> = (1..table.columns.len()).filter(|&j| table.columns[j] != "u").collect();
    let plots: Vec<String> = temps
        .iter()
        .map(|&j| format!("'{csv_name}' using 1:{} with lines title '{}'", j + 1, table.columns[j]))
        .collect();
    format!(
        "set datafile separator ','\n\
         set title '{title}'\n\
         set xlabel 't (model time units)'\n\
         set ylabel 'Temperature (F)'\n\
         set key outside right\n\
         set grid\n\
         plot {}\n",
        plots.join(", \\\n     ")
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(135.0), "135");
        assert_eq!(format_number(0.1), "0.1");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333");
        assert_eq!(format_number(-9.47150485123), "-9.47150485");
        assert_eq!(format_number(399.999839847), "399.99984");
        assert_eq!(format_number(1.5e-7), "1.5e-7");
        assert_eq!(format_number(123456789012.0), "1.23456789e11");
        assert_eq!(format_number(9.9999999999), "10");
    }

    #[test]
    fn stride_keeps_last_sample() {
        assert_eq!(sample_indices(5, 2).collect::<Vec<_>>(), vec![0, 2, 4]);
        assert_eq!(sample_indices(6, 2).collect::<Vec<_>>(), vec![0, 2, 4, 5]);
        assert_eq!(sample_indices(3, 0).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(sample_indices(0, 3).count(), 0);
    }

    #[test]
    fn csv_rejects_malformed() {
        assert!(TrajectoryTable::from_csv("").is_err());
        assert!(TrajectoryTable::from_csv("t,y\n1,abc\n").is_err());
        assert!(TrajectoryTable::from_csv("t,y\n1\n").is_err());
    }

    #[test]
    fn gnuplot_lists_temperature_columns() {
        let table = TrajectoryTable {
            columns: vec!["t".into(), "T_air".into(), "u".into()],
            rows: vec![],
        };
        let script = gnuplot_script("run.csv", &table, "demo");
        assert!(script.contains("using 1:2 with lines title 'T_air'"));
        assert!(!script.contains("1:3"));
    }

    proptest! {
        #[test]
        fn formatted_values_round_trip(x in proptest::num::f64::NORMAL | proptest::num::f64::ZERO) {
            let s = format_number(x);
            let parsed: f64 = s.parse().unwrap();
            prop_assert_eq!(format_number(parsed), s.clone());
            let rel = if x == 0.0 { parsed.abs() } else { ((parsed - x) / x).abs() };
            prop_assert!(rel <= 5e-9, "{} -> {}", x, s);
        }

        #[test]
        fn csv_round_trip(rows in proptest::collection::vec(proptest::collection::vec(-1e6f64..1e6, 3), 1..20)) {
            let table = TrajectoryTable { columns: vec!["t".into(), "a".into(), "b".into()], rows };
            let csv = table.to_csv();
            let back = TrajectoryTable::from_csv(&csv).unwrap();
            prop_assert_eq!(back.to_csv(), csv);
            for (r, b) in table.rows.iter().zip(&back.rows) {
                for (x, y) in r.iter().zip(b) {
                    prop_assert_eq!(round_significant(*x), *y);
                }
            }
        }
    }
}
