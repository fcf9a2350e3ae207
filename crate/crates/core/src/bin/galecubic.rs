use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use galecubic::algebra::Field;
use galecubic::epwfano::{
    epw_contains, epw_line_degree, epw_to_lines, harvest, line_to_epw, residual_conic, EPWPoint, ProjectiveSubspace,
};
use galecubic::equivariant::{a4_family, A4FamilyParams};
use galecubic::gale::NonSyzygeticEquation;
use galecubic::groebner::smooth_check;
use galecubic::io::{element_to_json, matrix_to_json, poly_to_json, vector_to_json, Instance};
use galecubic::lagrangian::{lagrangian_from_gale, RhoLagrangianData};
use galecubic::lattice::{build_ds_dt, enumerate_glue_groups, group_action_orbits};
use galecubic::selftest::{self, DEFAULT_SEED};
use galecubic::Error;

/// Exact computations on non-syzygetic cubic fourfolds, their Gale duals,
/// ρ-Lagrangians and EPW sextics.
///
/// Instances are JSON files read from `-i` (or stdin). Exit status: 0 for
/// success or a true check, 1 for a false check, 2 for invalid input.
///
/// `smooth check` works over prime fields only; smoothness over ℚ follows
/// from smoothness of a good reduction.
#[derive(Parser)]
#[command(name = "galecubic", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Field descriptor: rational, prime:P, cyclotomic3:rational, cyclotomic3:prime:P.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 10)]
    samples: usize,
    /// Which L_i defines the Lagrangian (1, 2 or 3).
    #[arg(long = "choice-of-L", global = true, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
    choice_of_l: u8,
    /// A4 family parameters alpha,beta,gamma,delta,lambda.
    #[arg(long, global = true)]
    params: Option<String>,
    /// Generate a random instance over --field instead of reading one.
    #[arg(long, global = true)]
    random: bool,
    #[arg(short = 'i', long = "input", global = true)]
    input: Option<PathBuf>,
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Gale duality of equation tuples.
    #[command(subcommand)]
    Gale(GaleCmd),
    /// ρ-Lagrangian subspaces of Λ³(E⊕F).
    #[command(subcommand)]
    Lagrangian(LagrangianCmd),
    /// σ-quadric identities.
    #[command(subcommand)]
    Invariants(InvariantsCmd),
    /// EPW sextic membership and line restrictions.
    #[command(subcommand)]
    Epw(EpwCmd),
    /// The correspondence between EPW points and lines on the cubic.
    #[command(subcommand)]
    Fano(FanoCmd),
    /// Ideal membership of the big cubics.
    #[command(subcommand)]
    Gm(GmCmd),
    /// Overlattice count and partner orbits.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Smoothness of cubics over prime fields.
    #[command(subcommand)]
    Smooth(SmoothCmd),
    /// The A4-equivariant family.
    #[command(subcommand)]
    A4(A4Cmd),
    /// The acceptance suite.
    #[command(subcommand)]
    Selftest(SelftestCmd),
}

#[derive(Subcommand)]
enum GaleCmd {
    /// Append the Gale dual of the first equation.
    Dual,
    /// Check rank and L-independence; opposite-sign pairs must compose to zero.
    Validate,
}

#[derive(Subcommand)]
enum LagrangianCmd {
    /// Build the ρ-Lagrangian of the first equation.
    FromGale,
    /// Validate the instance's Lagrangian.
    Check,
}

#[derive(Subcommand)]
enum InvariantsCmd {
    Selftest,
}

#[derive(Subcommand)]
enum EpwCmd {
    /// Rank test for each point.
    Contains,
    /// Restriction of the sextic to the line through the first two points.
    LineDegree,
    /// Residual conic at each point.
    Conic,
    /// Collect EPW points by scanning random lines.
    Harvest,
}

#[derive(Subcommand)]
enum FanoCmd {
    /// Map each line to its EPW point.
    ToEpw,
    /// Split the residual conic at each point into lines.
    FromEpw,
    /// Points to lines and back.
    Roundtrip,
}

#[derive(Subcommand)]
enum GmCmd {
    Membership,
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Print the number of glue groups.
    Count,
    /// Orbits, stabilizers and partner count.
    Orbits,
}

#[derive(Subcommand)]
enum SmoothCmd {
    Check,
}

#[derive(Subcommand)]
enum A4Cmd {
    /// Emit the two cubics, generators and parameters.
    Emit,
    /// Run the end-to-end checks on a family member.
    Verify,
}

#[derive(Subcommand)]
enum SelftestCmd {
    /// Run every criterion and print a JSON table.
    All,
}

enum Outcome {
    True(String),
    False(String),
}

type CmdResult = galecubic::Result<Outcome>;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn verdict(ok: bool, text: String) -> Outcome {
    if ok {
        Outcome::True(text)
    } else {
        Outcome::False(text)
    }
}

struct Ctx {
    opts: Opts,
}

impl Ctx {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.opts.seed)
    }

    fn i(&self) -> usize {
        self.opts.choice_of_l as usize
    }

    fn field_or(&self, default: Field) -> galecubic::Result<Field> {
        self.opts.field.as_deref().map(Field::parse).unwrap_or(Ok(default))
    }

    fn a4_params(&self) -> galecubic::Result<A4FamilyParams> {
        let field = self.field_or(Field::Prime(97))?;
        let text = self.opts.params.as_deref().unwrap_or("1,2,1,1,1");
        let vals: Vec<i64> = text
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| bad(format!("bad parameter `{t}`"))))
            .collect::<galecubic::Result<_>>()?;
        let arr: [i64; 5] = vals.try_into().map_err(|_| bad("--params needs five values alpha,beta,gamma,delta,lambda"))?;
        A4FamilyParams::new(field, arr)
    }

    /// The instance from `-i`/stdin, or a random one with a single equation.
    fn instance(&self) -> galecubic::Result<Instance> {
        if self.opts.random {
            let field = self.field_or(Field::Prime(101))?;
            let mut inst = Instance::new(field);
            inst.equations.push(NonSyzygeticEquation::random_valid(field, &mut self.rng()));
            return Ok(inst);
        }
        let text = match &self.opts.input {
            Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(|e| bad(format!("{}: {e}", p.display())))?,
            _ => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s).map_err(|e| bad(e.to_string()))?;
                s
            }
        };
        Instance::parse(&text)
    }

    fn equation(inst: &Instance) -> galecubic::Result<&NonSyzygeticEquation> {
        inst.equations.first().ok_or_else(|| bad("the instance has no equation"))
    }

    fn lagrangian(&self, inst: &Instance) -> galecubic::Result<RhoLagrangianData> {
        match &inst.lagrangian {
            Some(a) => RhoLagrangianData::validate(a),
            None => Ok(lagrangian_from_gale(Self::equation(inst)?, self.i())?.0),
        }
    }

    /// Points of the instance, or `--samples` random ones.
    fn points(&self, inst: &Instance) -> galecubic::Result<Vec<EPWPoint>> {
        if inst.points.is_empty() {
            let mut rng = self.rng();
            return Ok((0..self.opts.samples).map(|_| EPWPoint::random(inst.field, &mut rng)).collect());
        }
        inst.points.iter().map(|p| EPWPoint::new(p.clone())).collect()
    }

    fn harvested(&self, inst: &Instance) -> galecubic::Result<Vec<EPWPoint>> {
        if !inst.points.is_empty() {
            return self.points(inst);
        }
        let a = self.lagrangian(inst)?;
        harvest(&a, self.opts.samples, 40 * self.opts.samples.max(10), &mut self.rng())
    }
}

fn gale(ctx: &Ctx, cmd: &GaleCmd) -> CmdResult {
    let mut inst = ctx.instance()?;
    match cmd {
        GaleCmd::Dual => {
            let dual = Ctx::equation(&inst)?.gale_dual()?;
            inst.equations.truncate(1);
            inst.equations.push(dual);
            Ok(Outcome::True(inst.to_string_pretty()))
        }
        GaleCmd::Validate => {
            if inst.equations.is_empty() {
                return Err(bad("the instance has no equation"));
            }
            let mut ok = true;
            let mut rows = Vec::new();
            for eq in &inst.equations {
                let rank = eq.coefficient_map().rank();
                let valid = rank == 6 && eq.is_valid();
                ok &= valid;
                rows.push(json!({"sign": eq.sign(), "rank": rank, "valid": valid}));
            }
            let mut pairs = Vec::new();
            for (x, ex) in inst.equations.iter().enumerate() {
                for (y, ey) in inst.equations.iter().enumerate().skip(x + 1) {
                    if ex.sign() != ey.sign() {
                        let zero = ex.coefficient_map().mul(&ey.coefficient_map().transpose()).is_zero();
                        ok &= zero;
                        pairs.push(json!({"pair": [x, y], "composition_zero": zero}));
                    }
                }
            }
            Ok(verdict(ok, pretty(&json!({"equations": rows, "dual_pairs": pairs, "valid": ok}))))
        }
    }
}

fn lagrangian(ctx: &Ctx, cmd: &LagrangianCmd) -> CmdResult {
    let mut inst = ctx.instance()?;
    match cmd {
        LagrangianCmd::FromGale => {
            let (a, _) = lagrangian_from_gale(Ctx::equation(&inst)?, ctx.i())?;
            inst.lagrangian = Some(a.basis().clone());
            Ok(Outcome::True(inst.to_string_pretty()))
        }
        LagrangianCmd::Check => {
            let cand = inst.lagrangian.as_ref().ok_or_else(|| bad("the instance has no lagrangian"))?;
            match RhoLagrangianData::validate(cand) {
                Ok(a) => {
                    let pres = a.adapted_presentation()?;
                    let report = json!({
                        "rho_lagrangian": true,
                        "dim_A_E": a.a_e().cols(),
                        "dim_A_F": a.a_f().cols(),
                        "alpha_zero": pres.alpha.is_zero(),
                        "sigma_block_form": pres.sigma_has_block_form(),
                    });
                    Ok(Outcome::True(pretty(&report)))
                }
                Err(Error::ConditionFailed(why)) => Ok(Outcome::False(pretty(&json!({"rho_lagrangian": false, "reason": why})))),
                Err(e) => Err(e),
            }
        }
    }
}

fn report_line(r: &selftest::CriterionReport) -> Outcome {
    let v = json!({"key": r.key, "pass": r.pass(), "seconds": r.seconds, "detail": r.detail});
    verdict(r.pass(), pretty(&v))
}

fn epw(ctx: &Ctx, cmd: &EpwCmd) -> CmdResult {
    let mut inst = ctx.instance()?;
    match cmd {
        EpwCmd::Contains => {
            let a = ctx.lagrangian(&inst)?;
            let pts = ctx.points(&inst)?;
            let rows: Vec<Value> = pts
                .iter()
                .map(|p| {
                    let (on, dim) = epw_contains(&a, p);
                    json!({"point": vector_to_json(p.lambda()), "on_sextic": on, "intersection_dim": dim})
                })
                .collect();
            let all = rows.iter().all(|r| r["on_sextic"] == true);
            Ok(verdict(all, pretty(&json!({"points": rows, "all_on_sextic": all}))))
        }
        EpwCmd::LineDegree => {
            let a = ctx.lagrangian(&inst)?;
            let (p0, p1) = if inst.points.len() >= 2 {
                (EPWPoint::new(inst.points[0].clone())?, EPWPoint::new(inst.points[1].clone())?)
            } else {
                let mut rng = ctx.rng();
                (EPWPoint::random(inst.field, &mut rng), EPWPoint::random(inst.field, &mut rng))
            };
            let g = epw_line_degree(&a, &p0, &p1)?;
            let roots: Vec<Value> = g.univariate_roots().unwrap_or_default().iter().map(element_to_json).collect();
            let report = json!({
                "p0": vector_to_json(p0.lambda()),
                "p1": vector_to_json(p1.lambda()),
                "degree": g.total_degree(),
                "polynomial": poly_to_json(&g),
                "roots": roots,
            });
            Ok(Outcome::True(pretty(&report)))
        }
        EpwCmd::Conic => {
            let eq = Ctx::equation(&inst)?;
            let mut all_singular = true;
            let mut rows = Vec::new();
            for p in ctx.points(&inst)? {
                let c = residual_conic(eq, ctx.i(), &p)?;
                let det = c.matrix.det()?;
                all_singular &= det.is_zero();
                rows.push(json!({
                    "point": vector_to_json(p.lambda()),
                    "matrix": matrix_to_json(&c.matrix),
                    "det": element_to_json(&det),
                }));
            }
            Ok(verdict(all_singular, pretty(&json!({"conics": rows, "all_singular": all_singular}))))
        }
        EpwCmd::Harvest => {
            let a = ctx.lagrangian(&inst)?;
            let pts = harvest(&a, ctx.opts.samples, 40 * ctx.opts.samples.max(10), &mut ctx.rng())?;
            let enough = pts.len() >= ctx.opts.samples;
            inst.points = pts.iter().map(|p| p.lambda().to_vec()).collect();
            Ok(verdict(enough, inst.to_string_pretty()))
        }
    }
}

fn fano(ctx: &Ctx, cmd: &FanoCmd) -> CmdResult {
    let mut inst = ctx.instance()?;
    let eq = Ctx::equation(&inst)?.clone();
    let i = ctx.i();
    match cmd {
        FanoCmd::ToEpw => {
            if inst.lines.is_empty() {
                return Err(bad("the instance has no lines"));
            }
            let pts = inst
                .lines
                .iter()
                .map(|l| line_to_epw(&eq, i, &ProjectiveSubspace::span(l)).map(|p| p.lambda().to_vec()))
                .collect::<galecubic::Result<Vec<_>>>()?;
            inst.points = pts;
            Ok(Outcome::True(inst.to_string_pretty()))
        }
        FanoCmd::FromEpw => {
            let pts = ctx.harvested(&inst)?;
            let mut lines = Vec::new();
            let mut all_split = true;
            for p in &pts {
                match epw_to_lines(&eq, i, p)?.lines {
                    Some((l1, l2)) => {
                        lines.push(l1.points());
                        lines.push(l2.points());
                    }
                    None => all_split = false,
                }
            }
            inst.points = pts.iter().map(|p| p.lambda().to_vec()).collect();
            inst.lines = lines;
            Ok(verdict(all_split, inst.to_string_pretty()))
        }
        FanoCmd::Roundtrip => {
            let pts = ctx.harvested(&inst)?;
            let (mut ok, mut failed, mut unsplit) = (0, 0, 0);
            for p in &pts {
                match epw_to_lines(&eq, i, p)?.lines {
                    Some((l1, l2)) => {
                        for l in [&l1, &l2] {
                            if line_to_epw(&eq, i, l).map(|q| &q == p).unwrap_or(false) {
                                ok += 1;
                            } else {
                                failed += 1;
                            }
                        }
                    }
                    None => unsplit += 1,
                }
            }
            let report = json!({"points": pts.len(), "roundtrips": ok, "failures": failed, "not_split": unsplit});
            Ok(verdict(failed == 0 && ok > 0, pretty(&report)))
        }
    }
}

fn lattice(cmd: &LatticeCmd) -> CmdResult {
    let (ds, dt) = build_ds_dt()?;
    let groups = enumerate_glue_groups(&ds, &dt).groups;
    match cmd {
        LatticeCmd::Count => Ok(Outcome::True(groups.len().to_string())),
        LatticeCmd::Orbits => {
            let o = group_action_orbits(&ds, &dt, &groups)?;
            let report = json!({
                "glue_groups": groups.len(),
                "group_order": o.group_order,
                "orbit_sizes": o.orbits.iter().map(|x| x.len()).collect::<Vec<_>>(),
                "stabilizer_sizes": o.stabilizers.iter().map(|x| x.len()).collect::<Vec<_>>(),
                "partner_count": o.partner_count(),
            });
            Ok(Outcome::True(pretty(&report)))
        }
    }
}

fn smooth(ctx: &Ctx) -> CmdResult {
    let inst = ctx.instance()?;
    if inst.equations.is_empty() {
        return Err(bad("the instance has no equation"));
    }
    let flags = inst.equations.iter().map(|e| smooth_check(&e.cubic_polynomial())).collect::<galecubic::Result<Vec<bool>>>()?;
    let all = flags.iter().all(|&b| b);
    Ok(verdict(all, pretty(&json!({"smooth": flags}))))
}

fn a4(ctx: &Ctx, cmd: &A4Cmd) -> CmdResult {
    match cmd {
        A4Cmd::Emit => {
            let params = ctx.a4_params()?;
            let (xe, xf, act) = a4_family(&params)?;
            let mut inst = Instance::new(params.field());
            inst.equations = vec![xe, xf];
            inst.generators = Some(act.generators.clone());
            inst.params = Some(params);
            Ok(Outcome::True(inst.to_string_pretty()))
        }
        A4Cmd::Verify => {
            let params = if ctx.opts.params.is_some() || (ctx.opts.input.is_none() && !ctx.opts.random) {
                ctx.a4_params()?
            } else {
                ctx.instance()?.params.ok_or_else(|| bad("the instance has no A4 parameters"))?
            };
            let (ok, detail) = selftest::a4_verification(&params, ctx.opts.seed, ctx.opts.samples)?;
            Ok(verdict(ok, pretty(&json!({"pass": ok, "detail": detail}))))
        }
    }
}

fn selftest_all(ctx: &Ctx) -> CmdResult {
    let reports = selftest::run_all(ctx.opts.seed);
    let ok = reports.iter().all(|r| r.pass());
    let table: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "criterion": r.number,
                "key": r.key,
                "pass": r.pass(),
                "seconds": r.seconds,
                "bound_seconds": r.bound_seconds,
                "detail": r.detail,
            })
        })
        .collect();
    Ok(verdict(ok, pretty(&json!({"seed": ctx.opts.seed, "all_pass": ok, "criteria": table}))))
}

fn dispatch(cli: Cli) -> CmdResult {
    let ctx = Ctx { opts: cli.opts };
    match &cli.cmd {
        Cmd::Gale(c) => gale(&ctx, c),
        Cmd::Lagrangian(c) => lagrangian(&ctx, c),
        Cmd::Invariants(InvariantsCmd::Selftest) => Ok(report_line(&selftest::run_criterion(3, ctx.opts.seed).expect("criterion 3"))),
        Cmd::Epw(c) => epw(&ctx, c),
        Cmd::Fano(c) => fano(&ctx, c),
        Cmd::Gm(GmCmd::Membership) => {
            let (ok, detail) = selftest::gm_membership(ctx.field_or(Field::Rational)?)?;
            Ok(verdict(ok, pretty(&json!({"pass": ok, "detail": detail}))))
        }
        Cmd::Lattice(c) => lattice(c),
        Cmd::Smooth(SmoothCmd::Check) => smooth(&ctx),
        Cmd::A4(c) => a4(&ctx, c),
        Cmd::Selftest(SelftestCmd::All) => selftest_all(&ctx),
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> io::Result<()> {
    match output {
        Some(p) => fs::write(p, format!("{text}\n")),
        None => writeln!(io::stdout().lock(), "{text}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.opts.output.clone();
    let (code, text) = match dispatch(cli) {
        Ok(Outcome::True(t)) => (0, t),
        Ok(Outcome::False(t)) => (1, t),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&output, &text) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
