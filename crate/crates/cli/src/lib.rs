//! The `repring` command line: argument parsing, job execution and report
//! rendering. [`run`] does everything except touching the process, so tests
//! can drive it directly.

use std::fmt::Display;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use repring::algmaps::{degree_witness, expected_degree, sample_pool, MapUnderTest};
use repring::bisetspec::parse_biset_with_cap;
use repring::ghost::{tilde_b, tilde_c, tilde_d, GhostRingRef, GhostRings, GhostVector, RingTag};
use repring::group::{order_cap, resolve_group_with_cap, GroupRef};
use repring::lattice::{connect, ConnectingMap, Lattice, Lattices, RingElement};
use repring::teninduct::{apply_tensor, tilde_u};
use repring::units::{ghost_torsion_units, orthogonal_units, UnitGroup, DEFAULT_UNIT_CAP};
use repring::{Biset, Error, VERSION};

#[derive(Parser, Debug)]
#[command(name = "repring", version, about = "Exact computations in representation rings of finite groups")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Upper bound on group orders (default: $REPRING_CAP or 360).
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    /// Hermite basis vectors.
    Basis,
    /// The standard generators (for `B`, the rows of the table of marks).
    Generators,
    /// Invariant factors of the cokernel in the ghost ring.
    Snf,
    Rank,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Describe the lattice of a representation ring inside its ghost ring.
    Lattice {
        #[arg(long)]
        ring: RingTag,
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, value_enum, default_value_t = Emit::Basis)]
        emit: Emit,
    },
    /// List the torsion units of a ring, with orthogonality certificates.
    Units {
        #[arg(long)]
        ring: RingTag,
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: Option<usize>,
        /// All torsion units of the ghost ring instead of the lattice.
        #[arg(long)]
        ghost: bool,
    },
    /// Tensor induce a ring element along a biset.
    Teninduce {
        #[arg(long)]
        ring: RingTag,
        #[arg(long)]
        biset: String,
        #[arg(long)]
        p: Option<usize>,
        /// Ghost vector JSON, as written by this tool.
        #[arg(long, conflicts_with = "generator")]
        input: Option<PathBuf>,
        /// Use the k-th standard generator of the source lattice.
        #[arg(long)]
        generator: Option<usize>,
    },
    /// Sample the algebraic degree of a tensor induction map.
    Algdeg {
        /// Biset spec of the map.
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = RingTag::B)]
        ring: RingTag,
        #[arg(long)]
        p: Option<usize>,
        /// Degree to test; defaults to the number of orbits of the biset.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random elements added to the generators in the sample pool.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Maximum number of difference tuples per order.
        #[arg(long, default_value_t = 120)]
        budget: usize,
    },
    /// Check every face of the diagram of rings and tensor induction maps
    /// on all lattice generators.
    DiagramCheck {
        /// Groups, each checked along its identity biset.
        #[arg(long)]
        group: Vec<String>,
        #[arg(long)]
        biset: Vec<String>,
        /// Primes; defaults to 2 and 3.
        #[arg(long)]
        p: Vec<usize>,
    },
}

/// Exit code and rendered streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A finished job: its JSON form, a table for TSV and text output, and
/// whether every mathematical check passed.
struct Report {
    json: Value,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    passed: bool,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::TheoryViolation(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Job<T> = std::result::Result<T, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let cap = cli.cap.unwrap_or_else(order_cap);
    match execute(&cli.command, cap) {
        Ok(report) => Outcome {
            code: if report.passed { 0 } else { 1 },
            stdout: render(&report, cli.format),
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Check(msg)) => Outcome { code: 1, stdout: String::new(), stderr: format!("check failed: {msg}\n") },
    }
}

fn execute(command: &Command, cap: usize) -> Job<Report> {
    match command {
        Command::Lattice { ring, group, p, emit } => cmd_lattice(*ring, &load_group(group, cap)?, *p, *emit),
        Command::Units { ring, group, p, ghost } => cmd_units(*ring, &load_group(group, cap)?, *p, *ghost),
        Command::Teninduce { ring, biset, p, input, generator } => {
            cmd_teninduce(*ring, &load_biset(biset, cap)?, *p, input.as_ref(), *generator)
        }
        Command::Algdeg { map, ring, p, degree, seed, samples, budget } => {
            cmd_algdeg(&load_biset(map, cap)?, *ring, *p, *degree, *seed, *samples, *budget)
        }
        Command::DiagramCheck { group, biset, p } => {
            let mut bisets = Vec::new();
            for g in group {
                bisets.push((format!("id {g}"), Biset::identity(load_group(g, cap)?)));
            }
            for spec in biset {
                bisets.push((spec.clone(), load_biset(spec, cap)?));
            }
            if bisets.is_empty() {
                return Err(Failure::Usage("diagram-check needs at least one --group or --biset".into()));
            }
            let primes = if p.is_empty() { vec![2, 3] } else { p.clone() };
            cmd_diagram_check(&bisets, &primes)
        }
    }
}

fn load_group(spec: &str, cap: usize) -> Job<GroupRef> {
    Ok(Arc::new(resolve_group_with_cap(spec, cap)?))
}

fn load_biset(spec: &str, cap: usize) -> Job<Biset> {
    Ok(parse_biset_with_cap(spec, cap)?)
}

/// The prime for rings that need one; other rings still carry a prime
/// internally, which does not affect them.
fn prime_for(tag: RingTag, p: Option<usize>) -> Job<usize> {
    match p {
        Some(p) if !is_prime(p) => Err(Failure::Usage(format!("{p} is not a prime"))),
        Some(p) => Ok(p),
        None if tag.needs_prime() => Err(Failure::Usage(format!("ring {tag} needs --p"))),
        None => Ok(2),
    }
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn lattices(g: &GroupRef, p: usize, e: Option<u32>) -> Job<Lattices> {
    let rings = match e {
        Some(e) => GhostRings::new(g.clone(), p, e)?,
        None => GhostRings::with_default_order(g.clone(), p)?,
    };
    Ok(Lattices::new(rings)?)
}

fn big(x: &impl Display) -> Value {
    let s = x.to_string();
    s.parse::<i64>().map(Value::from).unwrap_or(Value::String(s))
}

fn ring_json(ring: &GhostRingRef) -> Value {
    json!({
        "tag": ring.tag().to_string(),
        "group": ring.group().name(),
        "order": ring.group().order(),
        "p": ring.prime(),
        "e": ring.root_order(),
        "indices": (0..ring.len()).map(|k| ring.index_json(k)).collect::<Vec<_>>(),
    })
}

fn vector_row(v: &GhostVector) -> Vec<String> {
    v.values().iter().map(|z| z.to_string()).collect()
}

fn index_header(ring: &GhostRingRef) -> Vec<String> {
    (0..ring.len()).map(|k| ring.index_label(k)).collect()
}

fn cmd_lattice(tag: RingTag, g: &GroupRef, p: Option<usize>, emit: Emit) -> Job<Report> {
    let l = lattices(g, prime_for(tag, p)?, None)?;
    let lat = l.get(tag);
    let ring = lat.ring();
    let mut json = json!({"version": VERSION, "command": "lattice", "ring": ring_json(ring)});
    let (header, rows) = match emit {
        Emit::Basis | Emit::Generators => {
            let (vectors, labels): (Vec<GhostVector>, Vec<String>) = if emit == Emit::Basis {
                let b = lat.basis();
                let labels = (0..b.len()).map(|i| format!("b{i}")).collect();
                (b, labels)
            } else {
                (lat.generators().to_vec(), lat.labels().to_vec())
            };
            json["vectors"] = vectors
                .iter()
                .zip(&labels)
                .map(|(v, label)| json!({"label": label, "values": v.values()}))
                .collect();
            let mut header = vec!["label".to_string()];
            header.extend(index_header(ring));
            let rows = vectors
                .iter()
                .zip(labels)
                .map(|(v, label)| std::iter::once(label).chain(vector_row(v)).collect())
                .collect();
            (header, rows)
        }
        Emit::Snf => {
            let inv = lat.cokernel_invariants();
            json["snf"] = inv.iter().map(big).collect();
            json["cokernel_order"] = big(&lat.cokernel_order());
            (vec!["invariant".into()], inv.iter().map(|d| vec![d.to_string()]).collect())
        }
        Emit::Rank => {
            json["rank"] = json!(lat.rank());
            (vec!["rank".into()], vec![vec![lat.rank().to_string()]])
        }
    };
    Ok(Report { json, header, rows, passed: true })
}

fn cmd_units(tag: RingTag, g: &GroupRef, p: Option<usize>, ghost: bool) -> Job<Report> {
    let l = lattices(g, prime_for(tag, p)?, None)?;
    let lat = l.get(tag);
    let units: UnitGroup = if ghost {
        ghost_torsion_units(lat.ring(), DEFAULT_UNIT_CAP)?
    } else {
        orthogonal_units(lat, DEFAULT_UNIT_CAP)?
    };
    let closed = units.table().is_ok();
    let mut json = units.to_json();
    json["version"] = json!(VERSION);
    json["command"] = json!("units");
    json["ring"] = ring_json(lat.ring());
    json["closed_under_multiplication"] = json!(closed);
    let mut passed = closed;
    let mut header = vec!["unit".to_string(), "orthogonal".to_string()];
    header.extend(index_header(lat.ring()));
    let mut rows = Vec::new();
    for (i, u) in units.elements().iter().enumerate() {
        let orthogonal = u.mul(&u.dual()).map(|w| w.is_one()).unwrap_or(false);
        passed &= orthogonal;
        let mut row = vec![i.to_string(), orthogonal.to_string()];
        row.extend(vector_row(u));
        rows.push(row);
    }
    Ok(Report { json, header, rows, passed })
}

fn element_json(x: &RingElement, lat: &Lattice) -> Value {
    json!({
        "ghost": x.ghost.to_json(),
        "hnf_coords": x.coords.hnf_coords.iter().map(big).collect::<Vec<_>>(),
        "generator_coords": x.coords.generator_coords.iter().map(big).collect::<Vec<_>>(),
        "generator_labels": lat.labels(),
    })
}

fn common_order(u: &Biset) -> u32 {
    let (a, b) = (u.left().exponent(), u.right().exponent());
    (a / gcd(a, b) * b) as u32
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn cmd_teninduce(tag: RingTag, u: &Biset, p: Option<usize>, input: Option<&PathBuf>, generator: Option<usize>) -> Job<Report> {
    let p = prime_for(tag, p)?;
    let e = common_order(u);
    let (lg, lh) = (lattices(u.left(), p, Some(e))?, lattices(u.right(), p, Some(e))?);
    let (src, dst) = (lh.get(tag), lg.get(tag));
    let x = match (input, generator) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            // a bare vector, an element, or a teninduce report
            let value = ["/output/ghost", "/ghost", ""]
                .iter()
                .find_map(|ptr| value.pointer(ptr).filter(|v| v.get("entries").is_some()).cloned())
                .unwrap_or(value);
            src.ring().vector_from_json(&value)?
        }
        (None, Some(k)) => src
            .generators()
            .get(k)
            .cloned()
            .ok_or_else(|| Failure::Usage(format!("the source lattice has {} generators", src.generators().len())))?,
        (None, None) => return Err(Failure::Usage("teninduce needs --input or --generator".into())),
    };
    let x = src
        .element(&x)
        .ok_or_else(|| Failure::Usage("input is not in the source lattice".into()))?;
    let image = apply_tensor(u, &x, dst)?;
    let json = json!({
        "version": VERSION,
        "command": "teninduce",
        "orbits": u.num_orbits(),
        "source_ring": ring_json(src.ring()),
        "target_ring": ring_json(dst.ring()),
        "input": element_json(&x, src),
        "output": element_json(&image, dst),
    });
    let header = index_header(dst.ring());
    Ok(Report { json, header, rows: vec![vector_row(&image.ghost)], passed: true })
}

fn cmd_algdeg(u: &Biset, tag: RingTag, p: Option<usize>, degree: Option<usize>, seed: u64, samples: usize, budget: usize) -> Job<Report> {
    let p = prime_for(tag, p)?;
    let e = common_order(u);
    let (lg, lh) = (lattices(u.left(), p, Some(e))?, lattices(u.right(), p, Some(e))?);
    let n = degree.unwrap_or_else(|| expected_degree(u));
    let f = MapUnderTest::tensor(u, lh.get(tag).clone(), lg.get(tag).ring().clone());
    let pool = sample_pool(lh.get(tag), seed, samples);
    let verdict = degree_witness(&f, n, &pool, seed, budget)?;
    let json = json!({
        "version": VERSION,
        "command": "algdeg",
        "ring": tag.to_string(),
        "p": if tag.needs_prime() { Some(p) } else { None },
        "seed": seed,
        "pool_size": pool.len(),
        "expected_degree": expected_degree(u),
        "label": verdict.label(),
        "verdict": verdict,
    });
    let header = ["degree", "vanishes_above", "refutes_below", "tuples_checked", "label"].map(String::from).to_vec();
    let rows = vec![vec![
        verdict.degree.to_string(),
        verdict.vanishes_above.to_string(),
        verdict.refutes_below.to_string(),
        verdict.tuples_checked.to_string(),
        verdict.label().to_string(),
    ]];
    Ok(Report { json, header, rows, passed: verdict.vanishes_above })
}

/// One face of the diagram, checked on a number of generators.
struct Face {
    biset: String,
    p: usize,
    face: String,
    witnesses: usize,
    failure: Option<String>,
}

const MAPS: [ConnectingMap; 4] = [ConnectingMap::L, ConnectingMap::B, ConnectingMap::C, ConnectingMap::D];

fn check_faces(spec: &str, u: &Biset, p: usize) -> Job<Vec<Face>> {
    let e = common_order(u);
    let (lg, lh) = (lattices(u.left(), p, Some(e))?, lattices(u.right(), p, Some(e))?);
    let mut faces = Vec::new();
    let mut face = |name: String, gens: &[GhostVector], check: &dyn Fn(&GhostVector) -> repring::Result<Option<String>>| -> Job<()> {
        let mut failure = None;
        for x in gens {
            match check(x) {
                Ok(None) => {}
                Ok(Some(msg)) => {
                    failure = Some(msg);
                    break;
                }
                Err(Error::TheoryViolation(msg)) => {
                    failure = Some(msg);
                    break;
                }
                Err(err) => return Err(err.into()),
            }
        }
        faces.push(Face { biset: spec.to_string(), p, face: name, witnesses: gens.len(), failure });
        Ok(())
    };
    for (side, l) in [("G", &lg), ("H", &lh)] {
        for map in MAPS {
            let (src, dst) = (l.get(map.source()), l.get(map.target()));
            face(format!("{map:?}_{side} lands in {}", map.target()), src.generators(), &|x| {
                let x = src.expect_element(x, "generator")?;
                connect(map, &x, dst)?;
                Ok(None)
            })?;
        }
        face(format!("d.c = b on T_{side}"), l.t.generators(), &|x| {
            let lhs = tilde_d(&tilde_c(x, l.rk.ring())?, l.rf.ring())?;
            Ok((lhs != tilde_b(x, l.rf.ring())?).then(|| "d.c and b differ".to_string()))
        })?;
    }
    for tag in RingTag::ALL {
        let (src, dst) = (lh.get(tag), lg.get(tag));
        face(format!("tensor {tag} lands in {tag}_G"), src.generators(), &|x| {
            apply_tensor(u, &src.expect_element(x, "generator")?, dst)?;
            Ok(None)
        })?;
    }
    for map in MAPS {
        let (s, t) = (map.source(), map.target());
        face(format!("tensor commutes with {map:?}"), lh.get(s).generators(), &|x| {
            let down = map.apply_ghost(&tilde_u(s, u, x, lg.get(s).ring())?, lg.get(t).ring())?;
            let across = tilde_u(t, u, &map.apply_ghost(x, lh.get(t).ring())?, lg.get(t).ring())?;
            Ok((down != across).then(|| format!("tensor {s} then {map:?} differs from {map:?} then tensor {t}")))
        })?;
    }
    Ok(faces)
}

fn cmd_diagram_check(bisets: &[(String, Biset)], primes: &[usize]) -> Job<Report> {
    for &p in primes {
        prime_for(RingTag::T, Some(p))?;
    }
    let jobs: Vec<(&String, &Biset, usize)> = bisets
        .iter()
        .flat_map(|(spec, u)| primes.iter().map(move |&p| (spec, u, p)))
        .collect();
    let results: Vec<Job<Vec<Face>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(spec, u, p)| scope.spawn(move || check_faces(spec, u, p)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("diagram job panicked")).collect()
    });
    let mut faces = Vec::new();
    for r in results {
        faces.extend(r?);
    }
    let passed = faces.iter().all(|f| f.failure.is_none());
    let json = json!({
        "version": VERSION,
        "command": "diagram-check",
        "passed": passed,
        "faces": faces
            .iter()
            .map(|f| json!({
                "biset": f.biset,
                "p": f.p,
                "face": f.face,
                "witnesses": f.witnesses,
                "pass": f.failure.is_none(),
                "failure": f.failure,
            }))
            .collect::<Vec<_>>(),
    });
    let header = ["biset", "p", "face", "witnesses", "result"].map(String::from).to_vec();
    let rows = faces
        .iter()
        .map(|f| {
            vec![
                f.biset.clone(),
                f.p.to_string(),
                f.face.clone(),
                f.witnesses.to_string(),
                f.failure.clone().map_or("pass".into(), |m| format!("FAIL: {m}")),
            ]
        })
        .collect();
    Ok(Report { json, header, rows, passed })
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&report.json).expect("reports serialize") + "\n",
        Format::Tsv => std::iter::once(&report.header)
            .chain(&report.rows)
            .map(|row| row.join("\t") + "\n")
            .collect(),
        Format::Text => {
            let cols = report.header.len();
            let width: Vec<usize> = (0..cols)
                .map(|c| {
                    std::iter::once(&report.header)
                        .chain(&report.rows)
                        .map(|r| r.get(c).map_or(0, |s| s.chars().count()))
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            std::iter::once(&report.header)
                .chain(&report.rows)
                .map(|row| {
                    let cells: Vec<String> = row.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = width[c])).collect();
                    cells.join("  ").trim_end().to_string() + "\n"
                })
                .collect()
        }
    }
}
