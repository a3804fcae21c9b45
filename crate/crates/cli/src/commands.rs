use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use num_complex::Complex64;
use zonekit::algebra::{eigen_residual, eigenvalue, inner_product, norm};
use zonekit::coords::to_complex;
use zonekit::extensions::{clifford_dimension, unprojected_coulomb_matrix, zonal_coulomb_matrix};
use zonekit::padi::{anomalous_kernel, eigenspinor_residual, eigenspinors, PadiVariant, SpinSign};
use zonekit::path_measure::{discretized_feynman_kac, monte_carlo_feynman_kac, QuadOptions};
use zonekit::propagators::{evolve, zonal_kernel, KernelGrid, Sigma};
use zonekit::thermo::{
    average_energy, find_period_extrema, periodicity_interval, specific_heat, ExtremumKind, PeriodicQuantity,
};
use zonekit::verify::{run_suite, Suite};
use zonekit::zones::{zone_elements, zone_elements_n, zone_kernel};
use zonekit::{ChargeSign, Exec, PhysParams, ZoneError, ZonePolynomial};

use crate::config::{point_or_origin, write_file, CliError, CliResult, Config, Grid, ZoneRange};
use crate::{Cli, Command, Common};

struct Ctx {
    cfg: Config,
    params: PhysParams,
    order: Option<usize>,
    out_dir: PathBuf,
    exec: Exec,
}

impl Ctx {
    fn new(common: Common) -> CliResult<Self> {
        let cfg = match &common.config {
            Some(path) => Config::load(path)?,
            None => Config::default(),
        };
        let lambda = cfg.pick(common.lambda, "lambda", 1.0)?;
        let k = cfg.pick(common.k, "k", 2)?;
        let k = usize::try_from(k).map_err(|_| ZoneError::InvalidParameter {
            name: "k",
            reason: format!("must be an even positive integer, got {k}"),
        })?;
        let charge = match cfg.pick(common.charge, "charge", "negative".to_string())?.as_str() {
            "negative" | "J" => ChargeSign::Negative,
            "positive" | "-J" => ChargeSign::Positive,
            other => {
                return Err(ZoneError::InvalidParameter {
                    name: "charge",
                    reason: format!("expected `negative` or `positive`, got `{other}`"),
                }
                .into())
            }
        };
        let params = PhysParams::with_charge(lambda, k, charge)?;
        let order = cfg.pick_opt(common.order, "order")?;
        let out_dir = cfg.pick(common.out_dir, "out_dir", PathBuf::from("."))?;
        let exec = if common.sequential { Exec::Sequential } else { Exec::Parallel };
        Ok(Self {
            cfg,
            params,
            order,
            out_dir,
            exec,
        })
    }

    fn sigma(&self, flag: Option<String>, default: &str) -> CliResult<Sigma> {
        Ok(self.cfg.pick(flag, "sigma", default.to_string())?.parse::<Sigma>()?)
    }

    /// Points `(g, 0, ..., 0)` for every grid value `g`.
    fn axis_points(&self, grid: &Grid) -> Vec<Vec<f64>> {
        grid.0
            .iter()
            .map(|g| {
                let mut x = vec![0.0; self.params.k()];
                x[0] = *g;
                x
            })
            .collect()
    }

    fn write(&self, name: &str, contents: &str) -> CliResult<()> {
        write_file(&self.out_dir, name, contents)
    }
}

pub fn run(cli: Cli) -> CliResult<u8> {
    let ctx = Ctx::new(cli.common)?;
    match cli.command {
        Command::Kernel(args) => kernel(&ctx, args),
        Command::Spectrum(args) => spectrum(&ctx, args),
        Command::Zones(args) => zones(&ctx, args),
        Command::Evolve(args) => evolve_cmd(&ctx, args),
        Command::Thermo(args) => thermo(&ctx, args),
        Command::Path(args) => path(&ctx, args),
        Command::Padi(args) => padi(&ctx, args),
        Command::Coulomb(args) => coulomb(&ctx, args),
        Command::Clifford(args) => clifford(&ctx, args),
        Command::Verify(args) => verify(&ctx, args),
    }
}

fn default_grid() -> Grid {
    Grid((0..=8).map(|i| -1.0 + 0.25 * i as f64).collect())
}

fn kernel(ctx: &Ctx, args: crate::KernelArgs) -> CliResult<u8> {
    let sigma = ctx.sigma(args.sigma, "1")?;
    let a = if args.global { None } else { Some(ctx.cfg.pick(args.a, "a", 0)?) };
    let t = ctx.cfg.pick(args.t, "t", 0.5)?;
    let grid = ctx.cfg.pick(args.grid, "grid", default_grid())?;
    let pts = ctx.axis_points(&grid);
    let g = KernelGrid::evaluate(sigma, a, t, pts.clone(), pts, ctx.params, ctx.exec)?;
    let mut out = Vec::new();
    g.write_csv(&mut out)?;
    ctx.write("kernel.csv", &String::from_utf8(out).expect("csv is utf-8"))?;
    Ok(0)
}

fn spectrum(ctx: &Ctx, args: crate::SpectrumArgs) -> CliResult<u8> {
    let zones = ctx.cfg.pick(args.zones, "zones", ZoneRange(vec![0, 1, 2]))?;
    let pmax = ctx.cfg.pick(args.pmax, "pmax", 5)?;
    let field = !args.no_field_term;
    let p = ctx.params;
    let mut csv = String::from("a,p,eigenvalue,measured,residual,degeneracy\n");
    for &a in &zones.0 {
        let elements = zone_elements(a, a + pmax as usize, p)?;
        for deg in 0..=pmax {
            let want = eigenvalue(deg, a as u32, &p, field);
            let matching: Vec<_> = elements.iter().filter(|e| e.leading.hol_degree() == deg).collect();
            let (measured, residual) = eigen_residual(&matching[0].poly, field)?;
            writeln!(csv, "{a},{deg},{want:.17e},{measured:.17e},{residual:.3e},{}", matching.len()).unwrap();
        }
    }
    ctx.write("spectrum.csv", &csv)?;
    Ok(0)
}

fn zones(ctx: &Ctx, args: crate::ZonesArgs) -> CliResult<u8> {
    let a = ctx.cfg.pick(args.a, "a", 0)?;
    let grid = ctx.cfg.pick(args.grid, "grid", default_grid())?;
    let pts = ctx.axis_points(&grid);
    let half = ctx.params.half_dim();
    let mut header = Vec::new();
    for v in ["z", "w"] {
        for j in 1..=half {
            header.push(format!("re_{v}{j}"));
            header.push(format!("im_{v}{j}"));
        }
    }
    header.extend(["kernel_re".to_string(), "kernel_im".to_string()]);
    let mut csv = header.join(",") + "\n";
    for x in &pts {
        let z = to_complex(x);
        for y in &pts {
            let w = to_complex(y);
            let v = zone_kernel(a, &z, &w, &ctx.params);
            let coords: Vec<String> = z.iter().chain(&w).flat_map(|c| [c.re, c.im]).map(|c| format!("{c:.17e}")).collect();
            writeln!(csv, "{},{:.17e},{:.17e}", coords.join(","), v.re, v.im).unwrap();
        }
    }
    ctx.write("zones.csv", &csv)?;
    if let Some(n) = ctx.cfg.pick_opt(args.basis, "basis")? {
        let polys: Vec<serde_json::Value> = zone_elements_n(a, n, ctx.params)?
            .iter()
            .map(|e| serde_json::from_str(&e.poly.to_json()).expect("polynomial json"))
            .collect();
        ctx.write("zones_basis.json", &serde_json::to_string_pretty(&polys).expect("json"))?;
    }
    Ok(0)
}

fn evolve_cmd(ctx: &Ctx, args: crate::EvolveArgs) -> CliResult<u8> {
    let sigma = ctx.sigma(args.sigma, "i")?;
    let f = match args.input {
        Some(path) => ZonePolynomial::from_json(ctx.params, &fs::read_to_string(path)?)?,
        None => {
            let a = ctx.cfg.pick(args.a, "a", 0)?;
            let deg = args.p.unwrap_or(0);
            zone_elements(a, a + deg as usize, ctx.params)?
                .into_iter()
                .find(|e| e.leading.hol_degree() == deg)
                .map(|e| e.poly)
                .ok_or(ZoneError::BasisTooSmall {
                    requested: deg as usize + 1,
                    available: 0,
                })?
        }
    };
    let times = ctx
        .cfg
        .pick(args.times, "times", Grid((0..=24).map(|i| 0.25 * i as f64).collect()))?;
    let mut csv = String::from("t,overlap_re,overlap_im,norm\n");
    for &t in &times.0 {
        let g = evolve(&f, sigma, t)?;
        let o = inner_product(&g, &f)?;
        writeln!(csv, "{t:.17e},{:.17e},{:.17e},{:.17e}", o.re, o.im, norm(&g)).unwrap();
    }
    ctx.write("evolve.csv", &csv)?;
    Ok(0)
}

fn thermo(ctx: &Ctx, args: crate::ThermoArgs) -> CliResult<u8> {
    let p = ctx.params;
    let curve = ctx.cfg.pick(args.curve, "curve", "energy".to_string())?;
    let sigma = ctx.sigma(args.sigma, "1")?;
    let a = ctx.cfg.pick(args.a, "a", 0)?;
    let kappa = ctx.cfg.pick(args.kappa, "kappa", 2.0 * PI / p.lambda())?;
    let h = ctx.cfg.pick(args.h, "h", 1.0)?;
    let samples = ctx.cfg.pick(args.samples, "samples", 256)?;
    let x = match ctx.cfg.pick_opt(args.x, "x")? {
        None => (0..p.k()).map(|i| if i == 0 { 0.5 } else { 0.0 }).collect(),
        some => point_or_origin(some, p.k(), "x")?,
    };
    let temps = ctx
        .cfg
        .pick(args.temps, "temps", Grid((1..=50).map(|i| 0.1 * i as f64).collect()))?;
    let quantity = |name: &str| -> Option<PeriodicQuantity> {
        Some(match name {
            "partition" => PeriodicQuantity::PartitionDensity { sigma },
            "diagonal" => PeriodicQuantity::DiagonalDensity { sigma, x: x.clone() },
            "energy" => PeriodicQuantity::EnergyDensity { sigma },
            "tension" => PeriodicQuantity::TensionDensity { x: x.clone() },
            _ => return None,
        })
    };
    let csv = match curve.as_str() {
        "energy" | "specific-heat" => {
            let mut csv = String::from("T,re,im,abs\n");
            for &t in &temps.0 {
                let v = if curve == "energy" {
                    average_energy(sigma, t, kappa, h)?
                } else {
                    specific_heat(sigma, t, kappa, h)?
                };
                writeln!(csv, "{t:.17e},{:.17e},{:.17e},{:.17e}", v.re, v.im, v.norm()).unwrap();
            }
            csv
        }
        other => {
            if let Some(q) = other.strip_suffix("-scan").and_then(quantity) {
                let l = periodicity_interval(&p);
                let mut csv = String::from("t,abs2\n");
                for i in 0..=samples {
                    let t = l * i as f64 / samples as f64;
                    let v = q.eval(a, t, &p)?.map_or("inf".to_string(), |v| format!("{v:.17e}"));
                    writeln!(csv, "{t:.17e},{v}").unwrap();
                }
                csv
            } else if let Some(q) = other.strip_prefix("extrema-").and_then(quantity) {
                let mut csv = String::from("t,kind,abs2\n");
                for e in find_period_extrema(&q, a, &p, samples, ctx.exec)? {
                    let kind = match e.kind {
                        ExtremumKind::Minimum => "minimum",
                        ExtremumKind::Maximum => "maximum",
                        ExtremumKind::Pole => "pole",
                    };
                    let v = e.value.map_or("inf".to_string(), |v| format!("{v:.17e}"));
                    writeln!(csv, "{:.17e},{kind},{v}", e.time).unwrap();
                }
                csv
            } else {
                return Err(CliError::Usage(format!("unknown thermo curve `{other}`")));
            }
        }
    };
    ctx.write("thermo.csv", &csv)?;
    Ok(0)
}

fn path(ctx: &Ctx, args: crate::PathArgs) -> CliResult<u8> {
    let p = ctx.params;
    let sigma = ctx.sigma(args.sigma, "1")?;
    let a = ctx.cfg.pick(args.a, "a", 0)?;
    let horizon = ctx.cfg.pick(args.horizon, "horizon", 0.5)?;
    let n_max = ctx.cfg.pick(args.n_slices, "n_slices", 3)?;
    let method = ctx.cfg.pick(args.method, "method", "quadrature".to_string())?;
    let samples = ctx.cfg.pick(args.samples, "samples", 100_000)?;
    let seed = ctx.cfg.pick(args.seed, "seed", 0)?;
    let default_x: Vec<f64> = (0..p.k()).map(|i| if i == 0 { 0.3 } else { -0.2 }).collect();
    let default_y: Vec<f64> = (0..p.k()).map(|i| if i == 0 { 0.1 } else { 0.4 }).collect();
    let x = match ctx.cfg.pick_opt(args.x, "x")? {
        None => default_x,
        some => point_or_origin(some, p.k(), "x")?,
    };
    let y = match ctx.cfg.pick_opt(args.y, "y")? {
        None => default_y,
        some => point_or_origin(some, p.k(), "y")?,
    };
    let target = zonal_kernel(sigma, a, horizon, &x, &y, &p)?;
    let mut csv = String::from("n_slices,approx_re,approx_im,target_re,target_im,rel_err");
    csv.push_str(if method == "mc" { ",std_err\n" } else { "\n" });
    for n in 1..=n_max {
        let (v, extra) = match method.as_str() {
            "quadrature" => {
                let mut opts = QuadOptions {
                    exec: ctx.exec,
                    ..QuadOptions::default()
                };
                if let Some(order) = ctx.order {
                    opts.order = order;
                }
                (discretized_feynman_kac(sigma, a, &x, &y, horizon, n, &p, opts)?, String::new())
            }
            "mc" => {
                let est = monte_carlo_feynman_kac(sigma, a, &x, &y, horizon, n, &p, samples, seed, ctx.exec)?;
                (est.mean, format!(",{:.17e}", est.std_err))
            }
            other => return Err(CliError::Usage(format!("unknown method `{other}` (quadrature or mc)"))),
        };
        let rel = (v - target).norm() / target.norm();
        writeln!(
            csv,
            "{n},{:.17e},{:.17e},{:.17e},{:.17e},{rel:.17e}{extra}",
            v.re, v.im, target.re, target.im
        )
        .unwrap();
    }
    ctx.write("path.csv", &csv)?;
    Ok(0)
}

fn padi(ctx: &Ctx, args: crate::PadiArgs) -> CliResult<u8> {
    let p = ctx.params;
    let variant: PadiVariant = ctx.cfg.pick(args.variant, "variant", "z".to_string())?.parse()?;
    let zones = ctx.cfg.pick(args.zones, "zones", ZoneRange(vec![0, 1, 2]))?;
    let pmax = ctx.cfg.pick(args.pmax, "pmax", 3)?;
    let mut csv = String::from("a,p,j,sign,mu,eigenvalue,residual\n");
    for &a in &zones.0 {
        let elements = zone_elements(a, a + pmax as usize, p)?;
        for deg in 0..=pmax {
            let base = elements
                .iter()
                .find(|e| e.leading.hol_degree() == deg)
                .expect("every degree is present in the zone");
            for j in [1u8, 2] {
                for (sign, tag) in [(SpinSign::Plus, "+"), (SpinSign::Minus, "-")] {
                    let e = eigenspinors(&base.poly, j, sign, variant)?;
                    let r = eigenspinor_residual(&e.spinor, e.eigenvalue, variant)?;
                    writeln!(csv, "{a},{deg},{j},{tag},{:.17e},{:.17e},{r:.3e}", e.mu, e.eigenvalue).unwrap();
                }
            }
        }
    }
    ctx.write("padi_spectrum.csv", &csv)?;
    if let Some(grid) = ctx.cfg.pick_opt(args.grid, "grid")? {
        let pts = ctx.axis_points(&grid);
        let mut csv = String::from("a,x,y,j,component,re,im\n");
        for &a in &zones.0 {
            for x in &pts {
                for y in &pts {
                    for j in [1u8, 2] {
                        let q = anomalous_kernel(a, j, x, y, &p)?;
                        for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                            let v: Complex64 = q[r][c];
                            writeln!(
                                csv,
                                "{a},{:.17e},{:.17e},{j},q{}{},{:.17e},{:.17e}",
                                x[0],
                                y[0],
                                r + 1,
                                c + 1,
                                v.re,
                                v.im
                            )
                            .unwrap();
                        }
                    }
                }
            }
        }
        ctx.write("padi_kernel.csv", &csv)?;
    }
    Ok(0)
}

fn coulomb(ctx: &Ctx, args: crate::CoulombArgs) -> CliResult<u8> {
    let p = ctx.params;
    let q = ctx.cfg.pick(args.q, "q", 1.0)?;
    let g = if args.unprojected {
        unprojected_coulomb_matrix(q, ctx.cfg.pick(args.max_degree, "max_degree", 4)?, &p)?
    } else {
        let a = ctx.cfg.pick(args.a, "a", 0)?;
        zonal_coulomb_matrix(a, q, ctx.cfg.pick(args.basis, "basis", 12)?, &p)?
    };
    let mut csv = String::from("index,eigenvalue,multiplicity_group\n");
    for (i, (e, grp)) in g.spectrum.eigenvalues.iter().zip(&g.spectrum.groups).enumerate() {
        writeln!(csv, "{i},{e:.17e},{grp}").unwrap();
    }
    ctx.write("coulomb.csv", &csv)?;
    println!("hermiticity defect {:.3e}", g.hermiticity);
    for (value, m) in &g.spectrum.multiplicities {
        println!("level {value:.12} multiplicity {m}");
    }
    Ok(0)
}

fn clifford(ctx: &Ctx, args: crate::CliffordArgs) -> CliResult<u8> {
    let rmax = ctx.cfg.pick(args.rmax, "rmax", 12)?;
    let mut csv = String::from("r,n_r,count\n");
    for r in 1..=rmax {
        let (n, count) = clifford_dimension(r)?;
        writeln!(csv, "{r},{n},{count}").unwrap();
    }
    ctx.write("clifford.csv", &csv)?;
    Ok(0)
}

fn verify(ctx: &Ctx, args: crate::VerifyArgs) -> CliResult<u8> {
    let suite: Suite = ctx.cfg.pick(args.suite, "suite", "all".to_string())?.parse()?;
    let report = run_suite(suite, ctx.exec);
    ctx.write(&format!("verify_{suite}.json"), &report.to_json())?;
    let total = report.checks.len();
    let failed: Vec<_> = report.failures().map(|c| c.check_name.clone()).collect();
    println!("{} of {total} checks passed", total - failed.len());
    for name in &failed {
        println!("FAIL {name}");
    }
    Ok(if failed.is_empty() { 0 } else { 1 })
}
