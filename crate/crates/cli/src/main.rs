//! `ovenctl`: oven thermal models, controller/observer design and simulation
//! from the command line.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ovenctl_core::control::{self, default_poles, Design, PoleSet};
use ovenctl_core::heat::{self, AirProperties};
use ovenctl_core::matrix::{self, eigenvalues, Spectrum};
use ovenctl_core::output::{format_number, gnuplot_script, TrajectoryTable};
use ovenctl_core::plant::{self, FoodConfig, OvenSpec, GUIDELINES, PRESET_NAMES};
use ovenctl_core::repro::{self, ReproOptions};
use ovenctl_core::scenario::{self, ClosedLoopRun, Scenario};
use ovenctl_core::sim::{self, Method, StepMetrics, DEFAULT_DT, DEFAULT_SETTLING_BAND, DEFAULT_T_FINAL};
use ovenctl_core::sweep::{self, Execution};
use ovenctl_core::Error;

const OUT_DIR_ENV: &str = "OVENCTL_OUT_DIR";
const DEFAULT_OUT_DIR: &str = "ovenctl-out";

#[derive(Parser)]
#[command(
    name = "ovenctl",
    version,
    about = "Oven temperature models, pole-placement design and simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in foods and oven constants.
    Presets {
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Natural-convection heat transfer coefficient for a body in oven air.
    Htc(HtcArgs),
    /// Build and print the state-space model.
    Model(ModelArgs),
    /// Open-loop poles, stability and controllability/observability ranks.
    Analyze(ModelArgs),
    /// Compute controller, observer and feedforward gains.
    Design(DesignArgs),
    /// Simulate the open or closed loop and write the trajectory.
    Simulate(SimulateArgs),
    /// Re-run every model check and regenerate the figure data.
    Reproduce(ReproduceArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DataFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Open,
    Closed,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Exact,
    Rk4,
}

#[derive(Args)]
struct HtcArgs {
    /// Characteristic length, ft.
    #[arg(long)]
    length: f64,
    /// Surface-to-air temperature difference, °F.
    #[arg(long, default_value_t = plant::DEFAULT_PREHEAT_F - plant::DEFAULT_AMBIENT_F)]
    delta_t: f64,
    /// Surface area, ft²; adds the heat rate h·A·ΔT to the report.
    #[arg(long)]
    area: Option<f64>,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct FoodSource {
    /// Built-in food preset.
    #[arg(long)]
    food: Option<String>,
    /// JSON food description.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct PlantArgs {
    #[command(flatten)]
    source: FoodSource,
    #[arg(long, default_value_t = plant::DEFAULT_PREHEAT_F)]
    preheat: f64,
    #[arg(long, default_value_t = plant::DEFAULT_AMBIENT_F)]
    ambient: f64,
    /// Recompute wall and food coefficients from the convection correlations.
    #[arg(long)]
    derive_htc: bool,
    /// ΔT used by --derive-htc; defaults to preheat − ambient.
    #[arg(long, requires = "derive_htc")]
    delta_t: Option<f64>,
}

#[derive(Args)]
struct ModelArgs {
    #[command(flatten)]
    plant: PlantArgs,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
}

#[derive(Args)]
struct PoleArgs {
    /// Three comma-separated controller poles.
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    controller_poles: Option<[f64; 3]>,
    /// Three comma-separated observer poles.
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    observer_poles: Option<[f64; 3]>,
    /// Multiply every pole by each of these factors.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pole_scale: Vec<f64>,
    /// Use N = 1 instead of the DC-gain feedforward.
    #[arg(long)]
    no_feedforward: bool,
}

#[derive(Args)]
struct DesignArgs {
    #[command(flatten)]
    plant: PlantArgs,
    #[command(flatten)]
    poles: PoleArgs,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    plant: PlantArgs,
    #[command(flatten)]
    poles: PoleArgs,
    #[arg(long, value_enum, default_value_t = Mode::Closed)]
    mode: Mode,
    #[arg(long, default_value_t = DEFAULT_DT)]
    dt: f64,
    /// Defaults to 100, or longer for slow closed-loop designs.
    #[arg(long)]
    t_final: Option<f64>,
    #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
    method: MethodArg,
    /// RK4 steps per sample interval.
    #[arg(long, default_value_t = 1)]
    rk4_substeps: usize,
    /// Initial observer estimate: three comma-separated values, `ambient`, or `plant` (default).
    #[arg(long, allow_hyphen_values = true)]
    x0_hat: Option<String>,
    #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
    format: DataFormat,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Keep every n-th sample.
    #[arg(long, default_value_t = 1)]
    stride: usize,
    /// Write a gnuplot script next to the CSV.
    #[arg(long)]
    emit_plot_script: bool,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Output directory; defaults to $OVENCTL_OUT_DIR, then ./ovenctl-out.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Run the per-food checks one after another.
    #[arg(long)]
    sequential: bool,
    #[arg(long)]
    emit_plot_script: bool,
    #[arg(long, default_value_t = 10)]
    stride: usize,
    #[arg(long, hide = true, allow_hyphen_values = true)]
    perturb_a: Option<f64>,
}

enum Failure {
    Core(Error),
    Usage(String),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_usage() => 2,
            Failure::Core(e) if e.is_design_infeasible() => 3,
            Failure::Core(_) | Failure::Io(..) => 1,
            Failure::Usage(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Usage(m) => m.clone(),
            Failure::Io(p, e) => format!("{}: {e}", p.display()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let values = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    values
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected 3 comma-separated values, got {}", v.len()))
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Failure::Io(parent.to_path_buf(), e))?;
    }
    fs::write(path, contents).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn emit(out: Option<&Path>, contents: &str) -> CliResult<()> {
    match out {
        Some(path) => write_file(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn default_out_dir() -> PathBuf {
    std::env::var_os(OUT_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR))
}

/// Scenario plus the tabulated poles for built-in foods.
fn load_scenario(args: &PlantArgs) -> CliResult<(Scenario, Option<PoleSet>)> {
    let mut oven = OvenSpec::standard().with_temperatures(args.ambient, args.preheat)?;
    let delta_t = args
        .derive_htc
        .then(|| args.delta_t.unwrap_or(args.preheat - args.ambient));
    let (mut food, poles) = match (&args.source.food, &args.source.config) {
        (Some(name), _) => (plant::food_preset(name)?, Some(default_poles(name)?)),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            (FoodConfig::from_json(&text)?.into_preset(&oven.air, delta_t)?, None)
        }
        (None, None) => unreachable!("clap enforces one food source"),
    };
    if let Some(dt) = delta_t {
        plant::derive_htc(&mut oven, &mut food, dt)?;
    }
    Ok((Scenario::new(oven, food)?, poles))
}

fn resolve_poles(args: &PoleArgs, defaults: Option<PoleSet>) -> CliResult<Vec<(f64, PoleSet)>> {
    let to_complex = |p: [f64; 3]| matrix::real_roots(&p);
    let (controller, observer) = match (args.controller_poles, args.observer_poles, defaults) {
        (c, o, Some(d)) => (
            c.map(to_complex).unwrap_or(d.controller),
            o.map(to_complex).unwrap_or(d.observer),
        ),
        (Some(c), Some(o), None) => (to_complex(c), to_complex(o)),
        _ => {
            return Err(Failure::Usage(
                "custom foods need both --controller-poles and --observer-poles".into(),
            ))
        }
    };
    let base = PoleSet::new(controller, observer)?;
    if args.pole_scale.is_empty() {
        return Err(Failure::Usage("--pole-scale needs at least one factor".into()));
    }
    args.pole_scale
        .iter()
        .map(|&s| {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Failure::Usage(format!("pole scale must be positive, got {s}")));
            }
            Ok((s, base.scaled(s)?))
        })
        .collect()
}

fn fmt_complex(z: num_complex::Complex64, fmt_re: impl Fn(f64) -> String) -> String {
    if z.im == 0.0 {
        fmt_re(z.re)
    } else {
        format!(
            "{}{}{}i",
            fmt_re(z.re),
            if z.im < 0.0 { "-" } else { "+" },
            fmt_re(z.im.abs())
        )
    }
}

fn pole_list(poles: &[num_complex::Complex64]) -> String {
    poles
        .iter()
        .map(|&z| fmt_complex(z, format_number))
        .collect::<Vec<_>>()
        .join(", ")
}

fn presets(format: TextFormat) -> CliResult<()> {
    let oven = OvenSpec::standard();
    let foods = PRESET_NAMES
        .iter()
        .map(|n| plant::food_preset(n))
        .collect::<Result<Vec<_>, _>>()?;
    if format == TextFormat::Json {
        let value = serde_json::json!({ "oven": oven, "foods": foods, "guidelines": GUIDELINES });
        print!("{}", to_json(&value));
        return Ok(());
    }
    let mut out = String::new();
    writeln!(
        out,
        "{:<8} {:>6} {:>6} {:>6} {:>7} {:>7} {:>7} {:>6}",
        "food", "m", "cp", "D", "A", "h", "target", "safe"
    )
    .unwrap();
    for f in &foods {
        let b = &f.body;
        writeln!(
            out,
            "{:<8} {:>6} {:>6} {:>6} {:>7} {:>7} {:>7} {:>6}",
            b.name, b.mass, b.cp, b.char_length, b.area, b.h_air, f.target_temp, f.safe_temp
        )
        .unwrap();
    }
    let w = &oven.wall;
    writeln!(
        out,
        "\noven: air mass {} lb, air cp {}, wall m {} cp {} D {} A {} h {}; ambient {} F, preheat {} F",
        oven.air_mass, oven.air.cp, w.mass, w.cp, w.char_length, w.area, w.h_air, oven.ambient, oven.preheat
    )
    .unwrap();
    writeln!(out, "\nguideline temperatures (F):").unwrap();
    for g in &GUIDELINES {
        writeln!(
            out,
            "  {:<8} safe {:>5}  recommended {}-{}",
            g.food, g.safe, g.recommended_low, g.recommended_high
        )
        .unwrap();
    }
    print!("{out}");
    Ok(())
}

fn htc(args: &HtcArgs) -> CliResult<()> {
    let est = heat::estimate_htc(&AirProperties::OVEN_AIR, args.length, args.delta_t)?;
    let q = args.area.map(|a| heat::conv_heat_rate(est.h, a, args.delta_t, 0.0));
    if args.format == TextFormat::Json {
        let value = serde_json::json!({
            "length": args.length,
            "delta_t": args.delta_t,
            "estimate": est,
            "heat_rate": q,
        });
        print!("{}", to_json(&value));
        return Ok(());
    }
    println!("Gr = {}", format_number(est.group.gr));
    println!("Pr = {}", format_number(est.group.pr));
    println!("Nu = {} ({:?} branch)", format_number(est.group.nu), est.branch);
    println!("h  = {}", format_number(est.h));
    if let Some(q) = q {
        println!("q  = {}", format_number(q));
    }
    Ok(())
}

fn model(args: &ModelArgs) -> CliResult<()> {
    let (sc, _) = load_scenario(&args.plant)?;
    let ss = &sc.plant;
    let report = plant::validate_plant(ss);
    if args.format == TextFormat::Json {
        let value = serde_json::json!({ "oven": sc.oven, "food": sc.food, "plant": ss, "checks": report });
        print!("{}", to_json(&value));
    } else {
        println!(
            "{} in oven (preheat {} F, ambient {} F)",
            sc.name(),
            sc.oven.preheat,
            sc.oven.ambient
        );
        println!(
            "states {}; input {}; output {}",
            ss.state_labels.join(", "),
            ss.input_label,
            ss.output_label
        );
        print!("A =\n{:.6}B =\n{:.6}C =\n{:.6}", ss.a, ss.b, ss.c);
        for c in &report.checks {
            println!("{}  {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
        }
    }
    if !report.passed() {
        return Err(Failure::Usage("model violates the thermal structure checks".into()));
    }
    Ok(())
}

fn analyze(args: &ModelArgs) -> CliResult<()> {
    let (sc, _) = load_scenario(&args.plant)?;
    let report = control::analyze(&sc.plant)?;
    if args.format == TextFormat::Json {
        print!("{}", to_json(&report));
        return Ok(());
    }
    println!("open-loop poles of {}:", sc.name());
    let mut poles = report.poles.values().to_vec();
    poles.sort_by(|a, b| a.re.total_cmp(&b.re));
    for p in poles {
        println!(
            "  {:<10} ({})",
            fmt_complex(p, |x| format!("{x:.3}")),
            fmt_complex(p, format_number)
        );
    }
    println!("controllability rank {}/{}", report.controllability_rank, report.order);
    println!("observability rank {}/{}", report.observability_rank, report.order);
    println!(
        "{}",
        if report.asymptotically_stable {
            "asymptotically stable"
        } else {
            "not asymptotically stable"
        }
    );
    Ok(())
}

fn design_report(scale: f64, d: &Design, achieved: (&Spectrum, &Spectrum)) -> String {
    let g = d.gains();
    let mut out = String::new();
    writeln!(out, "pole scale {}", format_number(scale)).unwrap();
    writeln!(out, "  controller poles  {}", pole_list(&d.poles.controller)).unwrap();
    writeln!(out, "  observer poles    {}", pole_list(&d.poles.observer)).unwrap();
    let row = |v: &[f64]| v.iter().map(|&x| format_number(x)).collect::<Vec<_>>().join(", ");
    writeln!(out, "  K   = [{}]", row(g.k.as_slice())).unwrap();
    writeln!(out, "  L   = [{}]^T", row(g.l.as_slice())).unwrap();
    writeln!(out, "  N   = {}", format_number(g.n_ff)).unwrap();
    writeln!(out, "  eig(A-BK) = {}", pole_list(achieved.0.values())).unwrap();
    writeln!(out, "  eig(A-LC) = {}", pole_list(achieved.1.values())).unwrap();
    out
}

fn design(args: &DesignArgs) -> CliResult<()> {
    let (sc, defaults) = load_scenario(&args.plant)?;
    let sets = resolve_poles(&args.poles, defaults)?;
    let ss = &sc.plant;
    let mut text = String::new();
    let mut json = Vec::new();
    for (scale, poles) in sets {
        let d = sc.design(&poles, !args.poles.no_feedforward)?;
        let g = d.gains();
        let ctrl = eigenvalues(&(&ss.a - &(&ss.b * &g.k)))?;
        let obs = eigenvalues(&(&ss.a - &(&g.l * &ss.c)))?;
        for w in &d.warnings {
            eprintln!("warning: {w}");
        }
        text.push_str(&design_report(scale, &d, (&ctrl, &obs)));
        json.push(serde_json::json!({
            "scale": scale,
            "poles": d.poles,
            "gains": g,
            "achieved_controller": ctrl,
            "achieved_observer": obs,
            "warnings": d.warnings,
        }));
    }
    match args.format {
        TextFormat::Text => emit(args.out.as_deref(), &text),
        TextFormat::Json => emit(args.out.as_deref(), &to_json(&json)),
    }
}

fn parse_x0_hat(spec: Option<&str>, sc: &Scenario) -> CliResult<Option<Vec<f64>>> {
    match spec {
        None | Some("plant") => Ok(None),
        Some("ambient") => Ok(Some(vec![sc.oven.ambient; 3])),
        Some(s) => parse_triple(s)
            .map(|v| Some(v.to_vec()))
            .map_err(|e| Failure::Usage(format!("--x0-hat: {e}"))),
    }
}

fn render_table(table: &TrajectoryTable, format: DataFormat) -> String {
    match format {
        DataFormat::Csv => table.to_csv(),
        DataFormat::Json => table.to_json(),
    }
}

fn summary(label: &str, m: &StepMetrics) -> String {
    let settle = m
        .settling_time
        .map(|t| format!("settles (±{} F) by t = {}", m.band, format_number(t)))
        .unwrap_or_else(|| format!("does not settle within ±{} F", m.band));
    format!(
        "{label}: final T_food {}, peak {} at t = {}, overshoot {}, {settle}",
        format_number(m.final_value),
        format_number(m.peak),
        format_number(m.peak_time),
        format_number(m.overshoot)
    )
}

fn scaled_path(base: &Path, scale: f64) -> PathBuf {
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("run");
    let ext = base.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    base.with_file_name(format!("{stem}_scale{}.{ext}", format_number(scale)))
}

fn write_plot_script(csv: &Path, table: &TrajectoryTable, title: &str) -> CliResult<()> {
    let name = csv.file_name().and_then(|s| s.to_str()).unwrap_or("run.csv");
    write_file(&csv.with_extension("gp"), &gnuplot_script(name, table, title))
}

fn simulate(args: &SimulateArgs) -> CliResult<()> {
    if args.emit_plot_script && (args.out.is_none() || args.format != DataFormat::Csv) {
        return Err(Failure::Usage("--emit-plot-script needs --out and --format csv".into()));
    }
    if args.stride == 0 {
        return Err(Failure::Usage("--stride must be at least 1".into()));
    }
    if args.rk4_substeps == 0 {
        return Err(Failure::Usage("--rk4-substeps must be at least 1".into()));
    }
    let method = match args.method {
        MethodArg::Exact => Method::ExactDiscretization,
        MethodArg::Rk4 => Method::Rk4,
    };
    let (sc, defaults) = load_scenario(&args.plant)?;

    if args.mode == Mode::Open {
        if args.poles.pole_scale.len() > 1 {
            return Err(Failure::Usage(
                "--pole-scale sweeps apply to closed-loop runs only".into(),
            ));
        }
        let cfg = sc
            .open_loop_config(args.dt, args.t_final.unwrap_or(DEFAULT_T_FINAL))
            .with_method(method)
            .with_rk4_substeps(args.rk4_substeps);
        let traj = sim::simulate(&sc.plant, &cfg)?;
        let metrics = sim::step_metrics(&traj, sc.target(), DEFAULT_SETTLING_BAND)?;
        eprintln!("{}", summary(&format!("{} open loop", sc.name()), &metrics));
        let table = TrajectoryTable::open_loop(&traj, args.stride);
        emit(args.out.as_deref(), &render_table(&table, args.format))?;
        if let (true, Some(out)) = (args.emit_plot_script, &args.out) {
            write_plot_script(out, &table, &format!("{} open loop", sc.name()))?;
        }
        return Ok(());
    }

    let sets = resolve_poles(&args.poles, defaults)?;
    let x0_hat = parse_x0_hat(args.x0_hat.as_deref(), &sc)?;
    let runs: Vec<CliResult<ClosedLoopRun>> = sweep::map(Execution::default(), &sets, |(_, poles)| {
        let t_final = args.t_final.unwrap_or_else(|| scenario::closed_loop_horizon(poles));
        scenario::run_closed_loop(
            &sc,
            poles,
            !args.poles.no_feedforward,
            |cl| {
                Ok(sc
                    .closed_loop_config(cl, x0_hat.as_deref(), args.dt, t_final)?
                    .with_method(method)
                    .with_rk4_substeps(args.rk4_substeps))
            },
            DEFAULT_SETTLING_BAND,
        )
        .map_err(Failure::from)
    });

    let sweep_mode = sets.len() > 1;
    for ((scale, _), run) in sets.iter().zip(runs) {
        let run = run?;
        for w in &run.design.warnings {
            eprintln!("warning: {w}");
        }
        let title = format!("{} closed loop, pole scale {}", sc.name(), format_number(*scale));
        let table = TrajectoryTable::closed_loop(&run.trajectory, &run.design.closed_loop, args.stride);
        let rendered = render_table(&table, args.format);
        let out = if sweep_mode {
            let ext = match args.format {
                DataFormat::Csv => "csv",
                DataFormat::Json => "json",
            };
            let base = args
                .out
                .clone()
                .unwrap_or_else(|| default_out_dir().join(format!("simulate_{}.{ext}", sc.name())));
            Some(scaled_path(&base, *scale))
        } else {
            args.out.clone()
        };
        emit(out.as_deref(), &rendered)?;
        if let (true, Some(path)) = (args.emit_plot_script, &out) {
            write_plot_script(path, &table, &title)?;
        }
        let line = summary(&title, &run.metrics);
        match (sweep_mode, &out) {
            (true, Some(path)) => println!("{line} -> {}", path.display()),
            _ => eprintln!("{line}"),
        }
    }
    Ok(())
}

fn reproduce(args: &ReproduceArgs) -> CliResult<u8> {
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let opts = ReproOptions {
        perturb_a: args.perturb_a,
        exec,
        figure_stride: args.stride.max(1),
    };
    let report = repro::reproduce(&opts)?;
    let dir = args.out_dir.clone().unwrap_or_else(default_out_dir);
    for fig in &report.figures {
        let path = dir.join(&fig.file_name);
        write_file(&path, &fig.table.to_csv())?;
        if args.emit_plot_script {
            write_plot_script(&path, &fig.table, &fig.title)?;
        }
    }
    write_file(&dir.join("report.json"), &to_json(&report))?;
    print!("{}", report.render());
    eprintln!(
        "wrote {} figure files and report.json to {}",
        report.figures.len(),
        dir.display()
    );
    Ok(report.exit_code() as u8)
}

fn run(cli: Cli) -> CliResult<u8> {
    match &cli.command {
        Command::Presets { format } => presets(*format)?,
        Command::Htc(a) => htc(a)?,
        Command::Model(a) => model(a)?,
        Command::Analyze(a) => analyze(a)?,
        Command::Design(a) => design(a)?,
        Command::Simulate(a) => simulate(a)?,
        Command::Reproduce(a) => return reproduce(a),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
