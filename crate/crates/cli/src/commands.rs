use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Map, Value};

use shintani_core::ideals::{enumerate_r_sigma, FractionalIdeal};
use shintani_core::membership::MembershipRegistry;
use shintani_core::zeta::{
    l_function, partial_zeta, DedekindJob, EvaluatorRegistry, ResolverRegistry, TableResolver, ZetaParams,
    ZetaValue,
};
use shintani_core::{Error, Result};

use crate::job::{ideal_json, rationals_json, JobSpec, Setup, SCHEMA_VERSION};

pub struct Context<'a> {
    pub job: &'a JobSpec,
    pub setup: Setup,
    pub seed: u64,
}

pub struct Outcome {
    pub body: Map<String, Value>,
    /// Whether a verification-type command found a failure.
    pub verified: bool,
}

impl Outcome {
    fn ok(body: Value) -> Outcome {
        Outcome {
            body: into_map(body),
            verified: true,
        }
    }
}

fn into_map(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("command bodies are objects"),
    }
}

pub trait Command: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, ctx: &Context) -> Result<Outcome>;
}

pub struct Commands {
    commands: BTreeMap<&'static str, Arc<dyn Command>>,
}

impl Default for Commands {
    fn default() -> Self {
        let mut c = Commands {
            commands: BTreeMap::new(),
        };
        c.register(Arc::new(Cones));
        c.register(Arc::new(Verify));
        c.register(Arc::new(Zeta));
        c.register(Arc::new(Lfun));
        c.register(Arc::new(RegCheck));
        c
    }
}

impl Commands {
    pub fn register(&mut self, c: Arc<dyn Command>) {
        self.commands.insert(c.name(), c);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Command>> {
        self.commands
            .get(name)
            .cloned()
            .ok_or_else(|| Error::InvalidInput(format!("unknown command {name:?}")))
    }
}

struct Cones;

impl Command for Cones {
    fn name(&self) -> &'static str {
        "cones"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        let dom = ctx.setup.domain()?;
        let ib = &ctx.setup.basis;
        let reps = ideals(ctx)?;
        let mut cones = Vec::new();
        // cones are built in lexicographic order of σ
        for c in dom.cones() {
            let mut entry = json!({
                "sigma": c.sigma.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "w": c.w,
                "generators": c.generators.iter().map(|g| rationals_json(g.coords())).collect::<Vec<_>>(),
                "flags": c.flags.iter().map(|f| f.as_str()).collect::<Vec<_>>(),
            });
            if !reps.is_empty() {
                let mut sets = Vec::new();
                for a in &reps {
                    let r = enumerate_r_sigma(c, &a.inverse(ib)?, ib)?;
                    let points: Vec<Value> = r
                        .points
                        .iter()
                        .map(|p| json!({"z": rationals_json(p.z.coords()), "t": rationals_json(&p.t)}))
                        .collect();
                    sets.push(json!({"ideal": ideal_json(a), "points": points}));
                }
                entry["r_sets"] = Value::Array(sets);
            }
            cones.push(entry);
        }
        Ok(Outcome::ok(json!({
            "cones": cones,
            "regulator_sign": dom.regulator_sign(),
            "is_true_domain": dom.is_true_domain(),
        })))
    }
}

struct Verify;

impl Command for Verify {
    fn name(&self) -> &'static str {
        "verify"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        let dom = ctx.setup.domain()?;
        let samples = ctx.job.samples.unwrap_or(1000);
        let strategy = MembershipRegistry::default().get(ctx.job.strategy.as_deref().unwrap_or("coordinates"))?;
        let report = shintani_core::domain::verify_net_count_with(&dom, strategy.as_ref(), samples, ctx.seed)?;
        let ok = report.ok();
        let mut out = json!({
            "net_count_ok": ok,
            "samples": samples,
            "seed": ctx.seed,
            "strategy": strategy.name(),
            "resampled": report.resampled,
        });
        if !ok {
            out["failures"] = report
                .failures
                .iter()
                .map(|(i, net)| json!({"sample": i, "net_count": net}))
                .collect();
        }
        Ok(Outcome {
            body: into_map(out),
            verified: ok,
        })
    }
}

fn ideals(ctx: &Context) -> Result<Vec<FractionalIdeal>> {
    ctx.job
        .ideals
        .iter()
        .flatten()
        .map(|j| ctx.setup.ideal(j))
        .collect()
}

fn params(ctx: &Context) -> Result<ZetaParams> {
    let s = ctx
        .job
        .s
        .ok_or_else(|| Error::InvalidInput("missing \"s\"".into()))?;
    let mut p = ZetaParams::new(s, ctx.job.target_error.unwrap_or(1e-6));
    if let Some(m) = ctx.job.max_radius {
        p.max_radius = m;
    }
    Ok(p)
}

fn zeta_body(v: &ZetaValue, started: Instant, complex: bool) -> Value {
    let value = if complex {
        json!({"re": v.value.re, "im": v.value.im})
    } else {
        json!(v.value.re)
    };
    json!({
        "value": value,
        "error_bound": v.error_bound,
        "terms": v.terms,
        "M": v.radius,
        "runtime_ms": started.elapsed().as_millis() as u64,
    })
}

struct Zeta;

impl Command for Zeta {
    fn name(&self) -> &'static str {
        "zeta"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        let started = Instant::now();
        let params = params(ctx)?;
        let dom = ctx.setup.domain()?;
        let ib = &ctx.setup.basis;
        let method = ctx.job.method.as_deref().unwrap_or("shintani");
        let v = match &ctx.job.ray_class {
            Some(rc) => {
                if method != "shintani" {
                    return Err(Error::InvalidInput("ray-class zeta is only available with method \"shintani\"".into()));
                }
                let a = ctx.setup.ideal(&rc.ideal)?;
                let f = ctx.setup.ideal(&rc.conductor)?;
                partial_zeta(&dom, ib, &a, &f, &params)?
            }
            None => {
                let reps = ideals(ctx)?;
                let job = DedekindJob {
                    domain: &dom,
                    basis: ib,
                    reps: &reps,
                };
                EvaluatorRegistry::default().get(method)?.dedekind(&job, &params)?
            }
        };
        let mut body = zeta_body(&v, started, false);
        body["method"] = json!(method);
        Ok(Outcome::ok(body))
    }
}

struct Lfun;

impl Command for Lfun {
    fn name(&self) -> &'static str {
        "lfun"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        let started = Instant::now();
        let params = params(ctx)?;
        let dom = ctx.setup.domain()?;
        let ib = &ctx.setup.basis;
        let spec = ctx
            .job
            .character
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("missing \"character\"".into()))?;
        let mut reps = ideals(ctx)?;
        if reps.is_empty() {
            reps.push(FractionalIdeal::unit(ib));
        }
        let chi = ctx.setup.character(spec, reps)?;
        let mut resolvers = ResolverRegistry::default();
        if let Some(classes) = &spec.classes {
            let entries = classes
                .iter()
                .map(|e| Ok((ctx.setup.ideal(&e.ideal)?, e.class)))
                .collect::<Result<Vec<_>>>()?;
            resolvers.register(Arc::new(TableResolver::new(entries)));
        }
        let default = if spec.classes.is_some() { "table" } else { "conductor-one" };
        let resolver = resolvers.get(spec.resolver.as_deref().unwrap_or(default))?;
        let v = l_function(&dom, ib, &chi, resolver.as_ref(), &params)?;
        let mut body = zeta_body(&v, started, true);
        body["resolver"] = json!(resolver.name());
        Ok(Outcome::ok(body))
    }
}

struct RegCheck;

impl Command for RegCheck {
    fn name(&self) -> &'static str {
        "regcheck"
    }

    fn run(&self, ctx: &Context) -> Result<Outcome> {
        let tol = ctx.job.tolerance.unwrap_or(1e-10);
        let (lhs, rhs) = ctx.setup.field.regulator_identity_sides(&ctx.setup.units)?;
        let ok = (lhs - rhs).abs() <= tol;
        Ok(Outcome {
            body: into_map(json!({
                "signed_regulator_lhs": lhs,
                "signed_regulator_rhs": rhs,
                "difference": (lhs - rhs).abs(),
                "tolerance": tol,
                "ok": ok,
            })),
            verified: ok,
        })
    }
}

/// Process exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_precision() {
        3
    } else {
        2
    }
}

pub fn error_body(e: &Error) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "error": e.kind(),
        "message": e.to_string(),
    })
}

pub fn with_header(command: &str, body: Map<String, Value>) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    m.extend(body);
    Value::Object(m)
}
