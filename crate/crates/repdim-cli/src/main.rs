//! Command-line front end: file I/O, dispatch, certificates and DOT export.

use clap::{Args, Parser, Subcommand, ValueEnum};
use repdim::algebra::{tensor, Algebra, AlgebraError};
use repdim::cert::{Certificate, InputHash, ModuleRef};
use repdim::endgldim::{
    auslander_generator, build_end_category, default_cutoff, global_dimension, layering_check, radical_arrows, EndError,
};
use repdim::exactlin::FieldSpec;
use repdim::io::{self, IoError};
use repdim::modcat::{injective, projective, Module};
use repdim::odim::{ext_nonzero, kunneth_class, odim_witness, specialization_matches_tensor, Lattice, OdimError};
use repdim::pipeline::{certify, sample_points, CertifyOptions, PipelineError};
use repdim::tiered::{build_layering, coefficient_quiver, p1_check, p2_check, TieredError};
use repdim::torsfin::{
    biserial_condition, detect_class, enumerate_torsionless, gamma_bijection_check, projinj_reduce, verify_inventory,
    Strategy, TorsError, TorsionlessInventory, DEFAULT_BOUND,
};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "repdim", version, about = "Representation-dimension bounds for quiver algebras")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Ground field (F2, F3, ..., Q), overriding the input files.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Write the certificate (or the produced file) here instead of stdout.
    #[arg(short = 'o', long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand)]
enum Group {
    /// Algebra summaries, tensor products and tier functions.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Torsionless and divisible inventories.
    #[command(subcommand)]
    Tors(TorsCmd),
    /// Generators, global dimensions and bounds.
    #[command(subcommand)]
    Repdim(RepdimCmd),
    /// Ext non-vanishing for lattices.
    #[command(subcommand)]
    Odim(OdimCmd),
    /// Nicely tiered algebras.
    #[command(subcommand)]
    Tiered(TieredCmd),
    /// The biserial intersection condition.
    #[command(subcommand)]
    Biserial(BiserialCmd),
    /// Reductions of the algebra.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Builtin example algebras.
    #[command(subcommand)]
    Fixture(FixtureCmd),
}

#[derive(Subcommand)]
enum AlgebraCmd {
    Check {
        file: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    Tensor {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    Tiers {
        file: PathBuf,
    },
}

#[derive(Args)]
struct EnumArgs {
    file: PathBuf,
    #[arg(long, default_value = "auto")]
    strategy: String,
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: usize,
}

#[derive(Subcommand)]
enum TorsCmd {
    Enumerate {
        #[command(flatten)]
        e: EnumArgs,
        /// Exit with code 4 unless the inventory is complete.
        #[arg(long)]
        require_complete: bool,
    },
    Verify {
        #[command(flatten)]
        e: EnumArgs,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    Gamma {
        #[command(flatten)]
        e: EnumArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Objects {
    TorsionlessDivisible,
    ProjectivesOnly,
    ProjectivesInjectives,
}

#[derive(Subcommand)]
enum RepdimCmd {
    Generator {
        #[command(flatten)]
        e: EnumArgs,
    },
    Gldim {
        #[command(flatten)]
        e: EnumArgs,
        #[arg(long, value_enum, default_value = "torsionless-divisible")]
        objects: Objects,
        #[arg(long)]
        cutoff: Option<usize>,
    },
    Certify {
        #[command(flatten)]
        e: EnumArgs,
        /// Use the truncation generator of a nicely tiered algebra.
        #[arg(long)]
        tiered: bool,
        #[arg(long)]
        cutoff: Option<usize>,
    },
}

#[derive(Subcommand)]
enum OdimCmd {
    Test { lattice: PathBuf },
    Kunneth { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand)]
enum TieredCmd {
    P1p2 {
        file: PathBuf,
    },
    Layering {
        file: PathBuf,
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// Coefficient quiver of P(vertex).
    Coeff {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BiserialCmd {
    Check { algebra: PathBuf, module: PathBuf },
}

#[derive(Subcommand)]
enum ReduceCmd {
    Projinj { file: PathBuf },
}

#[derive(Subcommand)]
enum FixtureCmd {
    List,
    Dump { name: String },
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
    witness: Option<String>,
}

fn fail(code: u8, kind: &'static str, message: impl ToString) -> Failure {
    Failure { code, kind, message: message.to_string(), witness: None }
}

impl Failure {
    fn with_witness(mut self, w: impl ToString) -> Failure {
        self.witness = Some(w.to_string());
        self
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Algebra(AlgebraError::NotAdmissible { .. }) => fail(3, "not_admissible", e),
            _ => fail(2, "malformed_input", e),
        }
    }
}

impl From<TieredError> for Failure {
    fn from(e: TieredError) -> Self {
        match e {
            TieredError::Undecided(ref w) => fail(6, "undecided", &e).with_witness(w),
            TieredError::NotNicelyTiered(_) | TieredError::Tier(_) => fail(3, "not_tiered", e),
            _ => fail(5, "prerequisite", e),
        }
    }
}

impl From<TorsError> for Failure {
    fn from(e: TorsError) -> Self {
        match e {
            TorsError::UnknownStrategy(_) => fail(2, "malformed_input", e),
            _ => fail(5, "prerequisite", e),
        }
    }
}

impl From<EndError> for Failure {
    fn from(e: EndError) -> Self {
        fail(5, "prerequisite", e)
    }
}

impl From<OdimError> for Failure {
    fn from(e: OdimError) -> Self {
        fail(2, "malformed_input", e)
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Tiered(t) => t.into(),
            PipelineError::Prerequisite(ref w) => fail(5, "prerequisite", &e).with_witness(w),
            PipelineError::Incomplete(s) => fail(5, "incomplete_inventory", &e).with_witness(format!("status {s}")),
            _ => fail(5, "prerequisite", e),
        }
    }
}

struct Ctx {
    seed: u64,
    field: Option<FieldSpec>,
    out: Option<PathBuf>,
}

/// What a command produces: a certificate, or a file written to --out
/// (stdout otherwise) followed by a certificate.
enum Output {
    Cert(Certificate),
    File(String, Certificate),
}

impl Ctx {
    fn algebra(&self, p: &Path) -> Result<(Algebra, InputHash), Failure> {
        let a = io::load_algebra(p, self.field)?;
        let h = InputHash { name: p.display().to_string(), hash: io::algebra_hash(&a) };
        Ok((a, h))
    }

    fn lattice(&self, p: &Path) -> Result<(Lattice, InputHash), Failure> {
        let l = io::load_lattice(p, self.field)?;
        let h = InputHash { name: p.display().to_string(), hash: hash_text(&io::lattice_json(&l)) };
        Ok((l, h))
    }

    fn cert(&self, command: &str, inputs: Vec<InputHash>, field: FieldSpec, result: impl Serialize) -> Certificate {
        Certificate::new(command, inputs, self.seed, field.to_string(), result)
    }
}

fn hash_text(s: &str) -> String {
    use sha2::Digest;
    hex::encode(sha2::Sha256::digest(s.as_bytes()))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| fail(2, "io", format!("cannot write {}: {e}", path.display())))
}

fn strategy(s: &str) -> Result<Strategy, Failure> {
    s.parse::<Strategy>().map_err(|e: TorsError| fail(2, "malformed_input", e))
}

fn inventory(ctx: &Ctx, a: &Algebra, e: &EnumArgs) -> Result<TorsionlessInventory, Failure> {
    Ok(enumerate_torsionless(a, strategy(&e.strategy)?, e.bound, ctx.seed)?)
}

fn complete_inventory(ctx: &Ctx, a: &Algebra, e: &EnumArgs) -> Result<TorsionlessInventory, Failure> {
    let inv = inventory(ctx, a, e)?;
    if !inv.status.is_complete() {
        return Err(fail(5, "incomplete_inventory", format!("inventory status is {}", inv.status)).with_witness(format!("status {}", inv.status)));
    }
    Ok(inv)
}

#[derive(Serialize)]
struct AlgebraSummary {
    vertices: usize,
    arrows: usize,
    relations: usize,
    dim: usize,
    loewy_length: usize,
    basis_by_length: Vec<usize>,
    classes: Vec<&'static str>,
    tensor_factors: usize,
}

fn summary(a: &Algebra) -> AlgebraSummary {
    AlgebraSummary {
        vertices: a.num_vertices(),
        arrows: a.num_arrows(),
        relations: a.relations.len(),
        dim: a.dim(),
        loewy_length: a.loewy_length(),
        basis_by_length: (0..a.loewy_length()).map(|d| a.degree_range(d).len()).collect(),
        classes: detect_class(a).names(),
        tensor_factors: a.factors().len(),
    }
}

#[derive(Serialize)]
struct InventoryResult {
    strategy: String,
    status: String,
    complete: bool,
    torsionless: Vec<ModuleRef>,
    divisible: Vec<ModuleRef>,
    non_projective_torsionless: usize,
    non_injective_divisible: usize,
}

fn inventory_result(e: &EnumArgs, inv: &TorsionlessInventory) -> InventoryResult {
    InventoryResult {
        strategy: e.strategy.clone(),
        status: inv.status.to_string(),
        complete: inv.status.is_complete(),
        torsionless: inv.torsionless.iter().map(ModuleRef::of).collect(),
        divisible: inv.divisible.iter().map(ModuleRef::of).collect(),
        non_projective_torsionless: inv.non_projective().len(),
        non_injective_divisible: inv.non_injective().len(),
    }
}

fn run_algebra(ctx: &Ctx, cmd: AlgebraCmd) -> Result<Output, Failure> {
    match cmd {
        AlgebraCmd::Check { file, dot } => {
            let (a, h) = ctx.algebra(&file)?;
            if let Some(d) = dot {
                write_file(&d, &a.to_dot(&file.display().to_string()))?;
            }
            Ok(Output::Cert(ctx.cert("algebra check", vec![h], a.field, summary(&a)).verdict(true, None)))
        }
        AlgebraCmd::Tensor { a, b, dot } => {
            let (x, hx) = ctx.algebra(&a)?;
            let (y, hy) = ctx.algebra(&b)?;
            let t = tensor(&x, &y).map_err(|e| fail(2, "malformed_input", e))?;
            if let Some(d) = dot {
                write_file(&d, &t.to_dot("tensor"))?;
            }
            let cert = ctx.cert("algebra tensor", vec![hx, hy], t.field, summary(&t)).verdict(true, None);
            Ok(Output::File(io::algebra_json(&t), cert))
        }
        AlgebraCmd::Tiers { file } => {
            let (a, h) = ctx.algebra(&file)?;
            let t = a.quiver.nicely_tiered_check().map_err(TieredError::from)?;
            #[derive(Serialize)]
            struct Tiers {
                tiers: Vec<(String, usize)>,
                num_tiers: usize,
                nicely_tiered: bool,
            }
            let nicely = repdim::tiered::nicely_tiered(&a).is_ok();
            let res = Tiers {
                tiers: a.quiver.vertices.iter().cloned().zip(t.tiers.iter().copied()).collect(),
                num_tiers: t.num_tiers,
                nicely_tiered: nicely,
            };
            let witness = t.witness.clone().or_else(|| repdim::tiered::nicely_tiered(&a).err().map(|e| e.to_string()));
            Ok(Output::Cert(ctx.cert("algebra tiers", vec![h], a.field, res).verdict(nicely, witness)))
        }
    }
}

fn run_tors(ctx: &Ctx, cmd: TorsCmd) -> Result<Output, Failure> {
    match cmd {
        TorsCmd::Enumerate { e, require_complete } => {
            let (a, h) = ctx.algebra(&e.file)?;
            let inv = inventory(ctx, &a, &e)?;
            let complete = inv.status.is_complete();
            let cert = ctx.cert("tors enumerate", vec![h], a.field, inventory_result(&e, &inv));
            if require_complete && !complete {
                let out = cert.verdict(false, Some(format!("status {}", inv.status)));
                emit(ctx, &Output::Cert(out))?;
                return Err(fail(4, "bounded", format!("inventory status is {}", inv.status)).with_witness(format!("status {}", inv.status)));
            }
            Ok(Output::Cert(cert.verdict(complete, None)))
        }
        TorsCmd::Verify { e, samples } => {
            let (a, h) = ctx.algebra(&e.file)?;
            let inv = inventory(ctx, &a, &e)?;
            let v = verify_inventory(&a, &inv, samples, ctx.seed)?;
            let (pass, w) = (v.pass, v.witness.clone());
            Ok(Output::Cert(ctx.cert("tors verify", vec![h], a.field, v).verdict(pass, w)))
        }
        TorsCmd::Gamma { e } => {
            let (a, h) = ctx.algebra(&e.file)?;
            let inv = complete_inventory(ctx, &a, &e)?;
            let g = gamma_bijection_check(&inv, ctx.seed)?;
            let (pass, w) = (g.pass, g.witness.clone());
            Ok(Output::Cert(ctx.cert("tors gamma", vec![h], a.field, g).verdict(pass, w)))
        }
    }
}

#[derive(Serialize)]
struct GldimResult {
    objects: Vec<ModuleRef>,
    dim: usize,
    radical_arrows: Vec<(usize, usize, usize)>,
    certificate: repdim::endgldim::GldimCertificate,
}

fn run_repdim(ctx: &Ctx, cmd: RepdimCmd) -> Result<Output, Failure> {
    match cmd {
        RepdimCmd::Generator { e } => {
            let (a, h) = ctx.algebra(&e.file)?;
            let inv = complete_inventory(ctx, &a, &e)?;
            let gen = auslander_generator(&a, &inv)?;
            let refs: Vec<ModuleRef> = gen.iter().map(ModuleRef::of).collect();
            Ok(Output::Cert(ctx.cert("repdim generator", vec![h], a.field, refs).verdict(true, None)))
        }
        RepdimCmd::Gldim { e, objects, cutoff } => {
            let (a, h) = ctx.algebra(&e.file)?;
            let nv = a.num_vertices();
            let mods: Vec<Module> = match objects {
                Objects::TorsionlessDivisible => auslander_generator(&a, &complete_inventory(ctx, &a, &e)?)?,
                Objects::ProjectivesOnly => (0..nv).map(|x| projective(&a, x)).collect(),
                Objects::ProjectivesInjectives => {
                    let mut v: Vec<Module> = (0..nv).map(|x| projective(&a, x)).collect();
                    v.extend((0..nv).map(|x| injective(&a, x)).filter(|q| !q.is_projective()));
                    v
                }
            };
            let c = build_end_category(&mods, ctx.seed)?;
            let g = global_dimension(&c, cutoff.unwrap_or_else(|| default_cutoff(c.len())));
            let res = GldimResult {
                objects: c.objects.iter().map(ModuleRef::of).collect(),
                dim: c.dim(),
                radical_arrows: radical_arrows(&c),
                certificate: g,
            };
            let exact = res.certificate.gldim.is_exact();
            Ok(Output::Cert(ctx.cert("repdim gldim", vec![h], a.field, res).verdict(exact, None)))
        }
        RepdimCmd::Certify { e, tiered, cutoff } => {
            let (a, h) = ctx.algebra(&e.file)?;
            let opts = CertifyOptions { tiered, strategy: strategy(&e.strategy)?, bound: e.bound, cutoff, seed: ctx.seed, factor_bounds: true };
            let r = certify(&a, &opts)?;
            let eq = r.bounds.equality;
            Ok(Output::Cert(ctx.cert("repdim certify", vec![h], a.field, r).verdict(eq, None)))
        }
    }
}

fn run_odim(ctx: &Ctx, cmd: OdimCmd) -> Result<Output, Failure> {
    match cmd {
        OdimCmd::Test { lattice } => {
            let (l, h) = ctx.lattice(&lattice)?;
            let cert = odim_witness(&l, &sample_points(l.algebra.field, l.vars))?;
            let pass = cert.witness_for.is_some();
            Ok(Output::Cert(ctx.cert("odim test", vec![h], l.algebra.field, cert).verdict(pass, None)))
        }
        OdimCmd::Kunneth { a, b } => {
            let (l, ha) = ctx.lattice(&a)?;
            let (l2, hb) = ctx.lattice(&b)?;
            let c = tensor(&l.algebra, &l2.algebra).map_err(|e| fail(2, "malformed_input", e))?;
            let field = c.field;
            #[derive(Serialize)]
            struct Row {
                point: Vec<String>,
                degree: usize,
                nonzero: bool,
                specialization_matches: bool,
                hash: String,
            }
            let mut rows = Vec::new();
            for p in sample_points(field, l.vars) {
                for q in sample_points(field, l2.vars) {
                    let e = kunneth_class(&c, &l, &l2, &p, &q)?;
                    rows.push(Row {
                        point: p.iter().chain(&q).map(|s| s.to_string()).collect(),
                        degree: e.degree(),
                        nonzero: ext_nonzero(&e),
                        specialization_matches: specialization_matches_tensor(&c, &l, &l2, &p, &q)?,
                        hash: e.content_hash(),
                    });
                }
            }
            #[derive(Serialize)]
            struct Res {
                passed: usize,
                total: usize,
                rows: Vec<Row>,
            }
            let passed = rows.iter().filter(|r| r.nonzero).count();
            let total = rows.len();
            let res = Res { passed, total, rows };
            Ok(Output::Cert(ctx.cert("odim kunneth", vec![ha, hb], field, res).verdict(passed == total, None)))
        }
    }
}

fn run_tiered(ctx: &Ctx, cmd: TieredCmd) -> Result<Output, Failure> {
    match cmd {
        TieredCmd::P1p2 { file } => {
            let (a, h) = ctx.algebra(&file)?;
            repdim::tiered::nicely_tiered(&a)?;
            let p1 = p1_check(&a);
            let p2 = p2_check(&a, ctx.seed)?;
            let pass = p1.pass && p2.pass;
            let w = p1.failures.first().or(p2.failures.first()).cloned();
            #[derive(Serialize)]
            struct Res {
                p1: repdim::tiered::ConditionReport,
                p2: repdim::tiered::ConditionReport,
            }
            Ok(Output::Cert(ctx.cert("tiered p1p2", vec![h], a.field, Res { p1, p2 }).verdict(pass, w)))
        }
        TieredCmd::Layering { file, cutoff } => {
            let (a, h) = ctx.algebra(&file)?;
            let l = build_layering(&a, ctx.seed)?;
            let c = l.category();
            let cert = layering_check(&c, &l.layer, &l.alpha, ctx.seed)?;
            let g = global_dimension(&c, cutoff.unwrap_or(l.layers + 1));
            #[derive(Serialize)]
            struct Obj {
                module: ModuleRef,
                layer: usize,
                families: Vec<repdim::tiered::Family>,
            }
            #[derive(Serialize)]
            struct Res {
                layers: usize,
                objects: Vec<Obj>,
                layering: repdim::endgldim::LayeringCertificate,
                gldim: repdim::endgldim::GldimCertificate,
            }
            let objects = l
                .objects
                .iter()
                .zip(&l.layer)
                .map(|(t, &layer)| Obj { module: ModuleRef::of(&t.module), layer, families: t.families.clone() })
                .collect();
            let (pass, w) = (cert.pass, cert.witness.clone());
            let res = Res { layers: l.layers, objects, layering: cert, gldim: g };
            Ok(Output::Cert(ctx.cert("tiered layering", vec![h], a.field, res).verdict(pass, w)))
        }
        TieredCmd::Coeff { file, vertex, dot } => {
            let (a, h) = ctx.algebra(&file)?;
            let x = a.quiver.vertex_index(&vertex).ok_or_else(|| fail(2, "malformed_input", format!("unknown vertex `{vertex}`")))?;
            let cq = coefficient_quiver(&a, x)?;
            if let Some(d) = dot {
                write_file(&d, &cq.to_dot(&format!("P({vertex})")))?;
            }
            let pass = cq.two_connected && cq.socle_intersection;
            Ok(Output::Cert(ctx.cert("tiered coeff", vec![h], a.field, cq).verdict(pass, None)))
        }
    }
}

fn run_biserial(ctx: &Ctx, cmd: BiserialCmd) -> Result<Output, Failure> {
    let BiserialCmd::Check { algebra, module } = cmd;
    let (a, h) = ctx.algebra(&algebra)?;
    let m = io::load_module(&module, &a)?;
    let hm = InputHash { name: module.display().to_string(), hash: m.content_hash() };
    let (pass, w) = biserial_condition(&m);
    let witness = w.as_ref().map(|w| {
        let q = &a.quiver;
        format!(
            "arrows {} and {} into {} meet in dimension {}",
            q.arrows[w.arrows.0].name, q.arrows[w.arrows.1].name, q.vertices[w.vertex], w.intersection
        )
    });
    Ok(Output::Cert(ctx.cert("biserial check", vec![h, hm], a.field, w).verdict(pass, witness)))
}

fn run_reduce(ctx: &Ctx, cmd: ReduceCmd) -> Result<Output, Failure> {
    let ReduceCmd::Projinj { file } = cmd;
    let (a, h) = ctx.algebra(&file)?;
    let r = projinj_reduce(&a)?;
    #[derive(Serialize)]
    struct Res {
        vertex: String,
        ideal: Vec<(String, Vec<String>)>,
        quotient: AlgebraSummary,
        quotient_semisimple: bool,
        lifting: String,
    }
    let q = &a.quiver;
    let res = Res {
        vertex: q.vertices[r.vertex].clone(),
        ideal: r.ideal.terms.iter().map(|(c, p)| (c.to_string(), p.iter().map(|&i| q.arrows[i].name.clone()).collect())).collect(),
        quotient: summary(&r.quotient),
        quotient_semisimple: r.quotient_semisimple,
        lifting: r.lifting.clone(),
    };
    let cert = ctx.cert("reduce projinj", vec![h], a.field, res).verdict(true, None);
    Ok(Output::File(io::algebra_json(&r.quotient), cert))
}

fn run_fixture(ctx: &Ctx, cmd: FixtureCmd) -> Result<Output, Failure> {
    let field = ctx.field.unwrap_or(FieldSpec::Rational);
    match cmd {
        FixtureCmd::List => {
            let names: Vec<&str> = repdim::fixtures::NAMES.to_vec();
            Ok(Output::Cert(ctx.cert("fixture list", vec![], field, names)))
        }
        FixtureCmd::Dump { name } => {
            let a = repdim::fixtures::by_name(&name, field).ok_or_else(|| fail(2, "malformed_input", format!("unknown fixture `{name}`")))?;
            let cert = ctx.cert("fixture dump", vec![], field, summary(&a)).verdict(true, None);
            Ok(Output::File(io::algebra_json(&a), cert))
        }
    }
}

fn emit(ctx: &Ctx, out: &Output) -> Result<(), Failure> {
    match out {
        Output::Cert(c) => match &ctx.out {
            Some(p) => write_file(p, &c.to_json()),
            None => {
                print!("{}", c.to_json());
                Ok(())
            }
        },
        Output::File(text, c) => match &ctx.out {
            Some(p) => {
                write_file(p, text)?;
                print!("{}", c.to_json());
                Ok(())
            }
            None => {
                print!("{text}");
                Ok(())
            }
        },
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| fail(2, "threads", e))?;
    }
    let field = match &cli.field {
        Some(f) => Some(f.parse::<FieldSpec>().map_err(|e| fail(2, "malformed_input", e))?),
        None => None,
    };
    let ctx = Ctx { seed: cli.seed, field, out: cli.out };
    let out = match cli.group {
        Group::Algebra(c) => run_algebra(&ctx, c),
        Group::Tors(c) => run_tors(&ctx, c),
        Group::Repdim(c) => run_repdim(&ctx, c),
        Group::Odim(c) => run_odim(&ctx, c),
        Group::Tiered(c) => run_tiered(&ctx, c),
        Group::Biserial(c) => run_biserial(&ctx, c),
        Group::Reduce(c) => run_reduce(&ctx, c),
        Group::Fixture(c) => run_fixture(&ctx, c),
    }?;
    emit(&ctx, &out)
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    message: &'a str,
    witness: Option<&'a str>,
    seed: u64,
    exit_code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed;
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let r = ErrorReport { error: f.kind, message: &f.message, witness: f.witness.as_deref(), seed, exit_code: f.code };
            println!("{}", serde_json::to_string(&r).expect("serializable"));
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

