use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use preproj::atlas::Atlas;
use preproj::config::Config;
use preproj::quiver::DynkinType;
use preproj::rigid::{enumerate_maximal_rigid, ExchangeGraph, GraphFormat, RigidModule};
use preproj::suites::{Suite, SuiteContext, SuiteReport};
use preproj::tilt::tilting_graph;
use preproj::{with_prime_field, Error, Field, Result};

#[derive(Parser)]
#[command(name = "preproj", version, about = "Preprojective algebras of type A: atlases, rigid modules, tilting graphs")]
struct Cli {
    /// `key = value` configuration file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    field_char: Option<u64>,
    #[arg(long, global = true)]
    cross_check_char: Option<u64>,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Enumerate every class of 2-dimensional Ext¹ spaces.
    #[arg(long, global = true)]
    exhaustive: bool,
    #[arg(long, global = true)]
    a4_samples: Option<usize>,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the indecomposable modules.
    Atlas {
        #[arg(long = "type")]
        quiver_type: DynkinType,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the mutation graph, or the tilting graph of End(T).
    Graph {
        #[arg(long = "type")]
        quiver_type: DynkinType,
        #[arg(long, value_enum, default_value_t = Kind::Mutation)]
        kind: Kind,
        /// Maximal rigid T for `--kind tilting`: a vertex index, `R<k>` for
        /// the k-th vertex counting from 1, or comma-separated summand aliases.
        #[arg(long)]
        rigid: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: GraphFormat,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long = "type", default_value = "A3")]
        quiver_type: DynkinType,
        /// Write every report line here as well.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Mutation,
    Tilting,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn config(cli: &Cli) -> Result<Config> {
    let mut cfg = Config::load(cli.config.as_deref())?;
    if let Some(v) = cli.seed {
        cfg.seed = v;
    }
    if let Some(v) = cli.field_char {
        cfg.field_char = v;
    }
    if let Some(v) = cli.cross_check_char {
        cfg.cross_check_char = v;
    }
    if let Some(v) = &cli.cache_dir {
        cfg.cache_dir = v.clone();
    }
    if cli.exhaustive {
        cfg.exhaustive_ext_sampling = true;
    }
    if let Some(v) = cli.a4_samples {
        cfg.a4_sample_count = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<bool> {
    let cfg = config(cli)?;
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Error::Config(e.to_string()))?;
    }
    let env = Env { cfg, cache: !cli.no_cache };
    match &cli.command {
        Command::Atlas { quiver_type, out } => {
            with_prime_field!(env.cfg.field_char, F => env.atlas_cmd::<F>(*quiver_type, out.as_deref()))
        }
        Command::Graph { quiver_type, kind, rigid, out, format } => {
            with_prime_field!(env.cfg.field_char, F => env.graph_cmd::<F>(*quiver_type, *kind, rigid.as_deref(), out.as_deref(), *format))
        }
        Command::Verify { suite, quiver_type, out } => env.verify_cmd(suite, *quiver_type, out.as_deref()),
    }
}

struct Env {
    cfg: Config,
    cache: bool,
}

impl Env {
    fn dir(&self, t: DynkinType, p: u64) -> PathBuf {
        self.cfg.cache_path(t, p)
    }

    /// Loads the cached atlas, or builds and caches it. A cached file that
    /// does not match the engine is an error, never silently rebuilt.
    fn atlas<F: Field>(&self, t: DynkinType) -> Result<Atlas<F>> {
        let path = self.dir(t, F::CHARACTERISTIC).join("atlas.json");
        if self.cache && path.exists() {
            let atlas = Atlas::<F>::load(&path)?;
            if atlas.dynkin() != t {
                return Err(Error::Format(format!("{} holds a {} atlas", path.display(), atlas.dynkin())));
            }
            return Ok(atlas);
        }
        let atlas = Atlas::enumerate(t, self.cfg.seed)?;
        if self.cache {
            atlas.save(&path)?;
        }
        Ok(atlas)
    }

    fn atlas_cmd<F: Field>(&self, t: DynkinType, out: Option<&Path>) -> Result<bool> {
        let atlas = self.atlas::<F>(t)?;
        if let Some(p) = out {
            atlas.save(p)?;
        }
        let alg = atlas.algebra();
        println!(
            "{t} over F_{}: {} indecomposables; dim Λ = {}, graded dims {:?}",
            F::CHARACTERISTIC,
            atlas.len(),
            alg.dim(),
            alg.basis().graded_dims
        );
        Ok(true)
    }

    fn graph_cmd<F: Field>(
        &self,
        t: DynkinType,
        kind: Kind,
        rigid: Option<&str>,
        out: Option<&Path>,
        format: GraphFormat,
    ) -> Result<bool> {
        let atlas = self.atlas::<F>(t)?;
        let mutation = ExchangeGraph::mutation(&atlas, enumerate_maximal_rigid(&atlas)?)?;
        let names = |s: usize| atlas.name(s);
        let ext = match format {
            GraphFormat::Dot => "dot",
            GraphFormat::Json => "json",
        };
        let (graph, stem, label): (ExchangeGraph, String, Box<dyn Fn(usize) -> String>) = match kind {
            Kind::Mutation => (mutation, "mutation".into(), Box::new(names)),
            Kind::Tilting => {
                let spec = rigid.ok_or_else(|| Error::Input("--kind tilting needs --rigid".into()))?;
                let k = resolve_rigid(spec, &mutation, &atlas)?;
                let g = tilting_graph(&atlas, &mutation.vertices[k])?;
                (g, format!("tilting-{k}"), Box::new(|s| format!("Hom({},T)", atlas.name(s))))
            }
        };
        if self.cache {
            graph.export(&self.dir(t, F::CHARACTERISTIC).join("graphs").join(format!("{stem}.{ext}")), format, &*label)?;
        }
        if let Some(p) = out {
            graph.export(p, format, &*label)?;
        }
        println!("{}", describe(&graph));
        Ok(true)
    }

    fn verify_cmd(&self, suite: &str, t: DynkinType, out: Option<&Path>) -> Result<bool> {
        let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
        let mut reports = Vec::new();
        for s in suites {
            let ty = s.fixed_type().unwrap_or(t);
            reports.push(with_prime_field!(self.cfg.field_char, F => self.run_suite::<F>(s, ty))?);
            if s == Suite::Lemma21 {
                reports.push(with_prime_field!(self.cfg.cross_check_char, F => self.run_suite::<F>(s, ty))?);
            }
        }
        let mut all = String::new();
        let mut ok = true;
        for r in &reports {
            let text = r.to_jsonl()?;
            if self.cache {
                let dir = self.dir(r.quiver_type, r.field_char).join("reports");
                fs::create_dir_all(&dir)?;
                fs::write(dir.join(format!("{}.jsonl", r.suite)), &text)?;
            }
            all.push_str(&text);
            println!("{}", serde_json::to_string(&r.summary())?);
            if let Some(f) = r.first_failure() {
                ok = false;
                eprintln!("counterexample: {}", serde_json::to_string(&f)?);
            }
        }
        if let Some(p) = out {
            fs::write(p, all)?;
        }
        Ok(ok)
    }

    fn run_suite<F: Field>(&self, s: Suite, t: DynkinType) -> Result<SuiteReport> {
        let ctx = SuiteContext::new(self.atlas::<F>(t)?, self.cfg.clone())?;
        ctx.run(s)
    }
}

fn resolve_rigid<F: Field>(spec: &str, g: &ExchangeGraph, atlas: &Atlas<F>) -> Result<usize> {
    let unknown = || Error::Input(format!("unknown rigid module {spec:?}"));
    let index = if let Ok(k) = spec.parse::<usize>() {
        Some(k)
    } else if let Some(k) = spec.strip_prefix('R').and_then(|r| r.parse::<usize>().ok()) {
        k.checked_sub(1)
    } else {
        let mut ids = atlas.projective_ids();
        for a in spec.split(',').map(str::trim) {
            ids.push(atlas.id_by_alias(a).ok_or_else(unknown)?);
        }
        g.find(&RigidModule::new(ids))
    };
    index.filter(|&k| k < g.vertex_count()).ok_or_else(unknown)
}

fn describe(g: &ExchangeGraph) -> String {
    let e = g.edge_count();
    let mut s = format!("{} vertices, {} edge{}", g.vertex_count(), e, if e == 1 { "" } else { "s" });
    if let Some(d) = g.regular_degree() {
        s.push_str(&format!(", {d}-regular"));
    }
    s.push_str(if g.is_connected() { ", connected" } else { ", disconnected" });
    s
}
