use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use lieop::free_lie::{self, BracketedWord, LieElement};
use lieop::grasper::{self, DecoratedLieElement, FiniteGroupTable};
use lieop::hilton_milnor::{self as hm, GroupOrder, RankProfile};
use lieop::homology::{homology, HomologyGroup, IntegerChainComplex};
use lieop::linalg::IntegerMatrix;
use lieop::partition::{build_nerve, build_poset};
use lieop::perm::Permutation;
use lieop::robinson::{self, robinson_cocycle, robinson_word};
use lieop::trees::{self, Ungraft, WeightedTree};
use lieop::verify::{self, CriterionReport, VerifyOptions};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "lieop", version, about = "Free Lie rings, partition complexes, weighted trees and grasper brackets")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Largest arity visited by `verify`.
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Group multiplication table as `{"order":g,"table":[[...]]}`.
    #[arg(long, global = true)]
    group_file: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Free Lie rings and the Lie representations.
    #[command(subcommand)]
    Lie(LieCmd),
    /// The partition poset, its nerve and cohomology.
    #[command(subcommand)]
    Pc(PcCmd),
    /// Weighted trees.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Lyndon words and Hilton-Milnor ranks.
    #[command(subcommand)]
    Hm(HmCmd),
    /// Lie words decorated by a finite group.
    #[command(subcommand)]
    Grasper(GrasperCmd),
    /// Run acceptance checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum LieCmd {
    /// Right-normed basis of Lie(n).
    Basis {
        n: usize,
    },
    /// Rewrite an element in the right-normed basis.
    Reduce {
        element: String,
        #[arg(long, default_value_t = 0)]
        shift: u32,
    },
    /// Apply a permutation to an element.
    Act {
        perm: String,
        element: String,
        #[arg(long, default_value_t = 0)]
        shift: u32,
    },
    /// Matrix of σ on Lie_D(n) in the right-normed basis.
    Matrix {
        n: usize,
        perm: String,
        #[arg(long, default_value_t = 0)]
        shift: u32,
    },
    /// Character of σ on Lie_D(n).
    Character {
        n: usize,
        perm: String,
        #[arg(long, default_value_t = 0)]
        shift: u32,
    },
    /// Bracket of elements on disjoint labels.
    Graft {
        left: String,
        right: String,
        #[arg(long, default_value_t = 0)]
        shift: u32,
    },
}

#[derive(Subcommand)]
enum PcCmd {
    /// Proper nontrivial partitions of {1..n}.
    Poset { n: usize },
    /// Simplex counts of the nerve.
    Nerve { n: usize },
    /// Reduced homology of the nerve.
    Homology {
        n: usize,
        /// Report every degree, not just the nonzero one.
        #[arg(long)]
        all: bool,
    },
    /// The cocycles c_σ and words w_σ.
    Robinson { n: usize },
    /// Defects of c_σ ↦ w_σ on transpositions, or on the given permutations.
    Equivariance {
        n: usize,
        #[arg(long = "perm")]
        perms: Vec<String>,
    },
}

#[derive(Subcommand)]
enum TreeCmd {
    /// T-matrix of a tree.
    Tmatrix { tree: String },
    /// Split a tree along a partition of its leaves.
    Ungraft {
        tree: String,
        #[arg(long, value_delimiter = ',', required = true)]
        s1: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        s2: Vec<u32>,
    },
    /// Join two trees under a root edge of length t0.
    Graft { t0: String, left: String, right: String },
    /// Caterpillar of w_σ with spine heights θ.
    Caterpillar {
        perm: String,
        #[arg(required = true)]
        theta: Vec<String>,
    },
}

#[derive(Subcommand)]
enum HmCmd {
    /// Lyndon words on n letters.
    Lyndon { n: u32, max_len: usize },
    /// Lyndon words of length n using every letter.
    Basic {
        n: u32,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// First homotopy degree and rank for simply connected summands.
    Rank {
        #[arg(long)]
        c: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        ranks: Vec<u64>,
    },
    /// As `rank`, with fundamental group of the given order (`inf` allowed).
    RankGroup {
        #[arg(long)]
        c: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        ranks: Vec<u64>,
        #[arg(long)]
        order: Option<String>,
    },
    /// Connectivity of the cube map J.
    Jconn { n: u64, c: u64 },
}

#[derive(Subcommand)]
enum GrasperCmd {
    /// Rewrite a decorated element in the right-normed basis.
    Reduce {
        element: String,
        #[arg(long, default_value_t = 0)]
        shift: u32,
    },
    /// Bracket of decorated elements on disjoint labels.
    Bracket {
        left: String,
        right: String,
        #[arg(long, default_value_t = 0)]
        shift: u32,
    },
    /// Apply a permutation to a decorated element.
    Act {
        perm: String,
        element: String,
        #[arg(long, default_value_t = 0)]
        shift: u32,
    },
    /// Rank of Lie_D(n) ⊗ Z[G^n].
    Rank {
        n: u32,
        #[arg(long, default_value_t = 0)]
        shift: u32,
        /// Group order; defaults to the order of `--group-file`, else 1.
        #[arg(long)]
        order: Option<u64>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Every acceptance criterion.
    All,
    /// The criteria exercising one module.
    Module { name: String },
}

struct Output {
    json: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Output { json, text: text.into(), ok: true }
    }
}

type Res = Result<Output, String>;

fn err(e: lieop::Error) -> String {
    e.to_string()
}

fn perm(s: &str, n: usize) -> Result<Permutation, String> {
    Permutation::parse(s, n).map_err(err)
}

fn rational(s: &str) -> Result<BigRational, String> {
    s.parse().map_err(|_| format!("bad rational '{s}'"))
}

fn tree(s: &str) -> Result<WeightedTree, String> {
    s.parse::<WeightedTree>().and_then(WeightedTree::validated).map_err(err)
}

fn element_json(e: &LieElement) -> Value {
    let terms: Vec<Value> =
        e.terms().iter().map(|(w, c)| json!({"word": w.to_string(), "coefficient": c.to_string()})).collect();
    json!({"labels": e.labels(), "shift": e.shift(), "terms": terms})
}

fn decorated_json(e: &DecoratedLieElement) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .iter()
        .map(|((w, g), c)| json!({"word": w.to_string(), "decoration": g, "coefficient": c.to_string()}))
        .collect();
    json!({"labels": e.labels(), "shift": e.shift(), "group_order": e.group().order(), "terms": terms})
}

fn matrix_json(m: &IntegerMatrix) -> Value {
    json!((0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn words_output(words: &[Vec<u32>]) -> Output {
    let words: Vec<String> = words.iter().map(|w| w.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")).collect();
    let text = words.join("\n");
    Output::new(json!(words), text)
}

fn homology_json(k: i32, g: &HomologyGroup) -> Value {
    json!({"degree": k, "rank": g.rank, "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>()})
}

fn homology_text(k: i32, g: &HomologyGroup) -> String {
    let mut parts = Vec::new();
    if g.rank > 0 {
        parts.push(if g.rank == 1 { "Z".to_string() } else { format!("Z^{}", g.rank) });
    }
    parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        parts.push("0".into());
    }
    format!("H_{k} = {}", parts.join(" + "))
}

fn group(g: &Global) -> Result<Arc<FiniteGroupTable>, String> {
    match &g.group_file {
        None => Ok(Arc::new(FiniteGroupTable::trivial())),
        Some(p) => {
            let s = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            FiniteGroupTable::from_json(&s).map(Arc::new).map_err(err)
        }
    }
}

fn lie(cmd: LieCmd) -> Res {
    Ok(match cmd {
        LieCmd::Basis { n } => {
            if n == 0 {
                return Err("n must be positive".into());
            }
            let words: Vec<String> = free_lie::lie_basis(n).iter().map(BracketedWord::to_string).collect();
            let text = words.join("\n");
            Output::new(json!(words), text)
        }
        LieCmd::Reduce { element, shift } => {
            let e = free_lie::reduce(&LieElement::parse(&element, shift).map_err(err)?);
            Output::new(element_json(&e), e.to_string())
        }
        LieCmd::Act { perm: p, element, shift } => {
            let e = LieElement::parse(&element, shift).map_err(err)?;
            let s = perm(&p, e.labels().iter().copied().max().unwrap_or(0) as usize)?;
            let out = free_lie::act(&s, &e).map_err(err)?;
            Output::new(element_json(&out), out.to_string())
        }
        LieCmd::Matrix { n, perm: p, shift } => {
            let m = free_lie::action_matrix(n, shift, &perm(&p, n)?).map_err(err)?;
            Output::new(matrix_json(&m), m.to_string())
        }
        LieCmd::Character { n, perm: p, shift } => {
            let c = free_lie::character(n, shift, &perm(&p, n)?).map_err(err)?;
            Output::new(json!({"character": c.to_string()}), c.to_string())
        }
        LieCmd::Graft { left, right, shift } => {
            let e1 = LieElement::parse(&left, shift).map_err(err)?;
            let e2 = LieElement::parse(&right, shift).map_err(err)?;
            let out = free_lie::graft(&e1, &e2).map_err(err)?;
            Output::new(element_json(&out), out.to_string())
        }
    })
}

fn pc(cmd: PcCmd) -> Res {
    Ok(match cmd {
        PcCmd::Poset { n } => {
            let p: Vec<String> = build_poset(n).map_err(err)?.iter().map(ToString::to_string).collect();
            let text = p.join("\n");
            Output::new(json!(p), text)
        }
        PcCmd::Nerve { n } => {
            let nerve = build_nerve(n).map_err(err)?;
            let counts = nerve.counts();
            let chi = nerve.euler_characteristic();
            let mut text = String::new();
            for (d, c) in counts.iter().enumerate() {
                let _ = writeln!(text, "dim {d}: {c}");
            }
            let _ = write!(text, "euler characteristic: {chi}");
            Output::new(json!({"n": n, "counts": counts, "euler_characteristic": chi}), text)
        }
        PcCmd::Homology { n, all } => {
            let complex = match n {
                2 => IntegerChainComplex::empty_augmented(),
                _ => build_nerve(n).map_err(err)?.chain_complex(),
            };
            let h = homology(&complex);
            if all {
                let groups: Vec<Value> = h.groups.iter().map(|(k, g)| homology_json(*k, g)).collect();
                let text: Vec<String> = h.groups.iter().map(|(k, g)| homology_text(*k, g)).collect();
                Output::new(json!(groups), text.join("\n"))
            } else {
                let nonzero: Vec<_> = h.nonzero().collect();
                match nonzero.as_slice() {
                    [(k, g)] => Output::new(homology_json(*k, g), homology_text(*k, g)),
                    [] => Output::new(json!({"degree": null, "rank": 0, "torsion": []}), "reduced homology vanishes"),
                    _ => return Err("homology is not concentrated in one degree; use --all".into()),
                }
            }
        }
        PcCmd::Robinson { n } => {
            if n < 3 {
                return Err(format!("need n ≥ 3, got {n}"));
            }
            let mut rows = Vec::new();
            let mut text = String::new();
            for s in Permutation::all(n - 1) {
                let w = robinson_word(&s);
                let c = robinson_cocycle(&s).map_err(err)?;
                let (chain, value) = c.support().next().expect("c_σ has one simplex");
                let _ = writeln!(text, "{s}  {w}  {value} * [{chain}]");
                rows.push(json!({"perm": s.to_string(), "word": w.to_string(), "simplex": chain.to_string(), "value": value.to_string()}));
            }
            text.pop();
            Output::new(json!(rows), text)
        }
        PcCmd::Equivariance { n, perms } => {
            let report = if perms.is_empty() {
                robinson::verify_equivariance(n).map_err(err)?
            } else {
                let ps = perms.iter().map(|p| perm(p, n)).collect::<Result<Vec<_>, _>>()?;
                robinson::verify_with(&robinson::robinson_map(n).map_err(err)?, &ps).map_err(err)?
            };
            let text: Vec<String> = report
                .generators
                .iter()
                .map(|g| format!("{} {}", g.perm, if g.pass { "ok" } else { "nonzero defect" }))
                .collect();
            let ok = report.all_pass();
            let mut out = Output::new(serde_json::to_value(&report).expect("serializable"), text.join("\n"));
            out.ok = ok;
            out
        }
    })
}

fn tree_cmd(cmd: TreeCmd) -> Res {
    Ok(match cmd {
        TreeCmd::Tmatrix { tree: t } => {
            let m = tree(&t)?.t_matrix().map_err(err)?;
            let mut text = String::new();
            for &i in m.labels() {
                let row: Vec<String> = m.labels().iter().map(|&h| m.get(i, h).expect("label").to_string()).collect();
                let _ = writeln!(text, "{i}: {}", row.join(" "));
            }
            text.pop();
            Output::new(serde_json::to_value(&m).expect("serializable"), text)
        }
        TreeCmd::Ungraft { tree: t, s1, s2 } => match trees::ungraft(&tree(&t)?, &s1, &s2).map_err(err)? {
            Ungraft::Basepoint => Output::new(json!({"basepoint": true}), "basepoint"),
            Ungraft::Split { t0, left, right } => Output::new(
                json!({"basepoint": false, "t0": t0.to_string(), "left": left.to_string(), "right": right.to_string()}),
                format!("t0 = {t0}\nleft = {left}\nright = {right}"),
            ),
        },
        TreeCmd::Graft { t0, left, right } => {
            let g = trees::graft_trees(&rational(&t0)?, &tree(&left)?, &tree(&right)?).map_err(err)?;
            Output::new(json!({"tree": g.to_string(), "basepoint": g.is_basepoint()}), g.to_string())
        }
        TreeCmd::Caterpillar { perm: p, theta } => {
            let theta = theta.iter().map(|s| rational(s)).collect::<Result<Vec<_>, _>>()?;
            let c = trees::caterpillar(&perm(&p, theta.len())?, &theta).map_err(err)?;
            Output::new(json!({"tree": c.to_string()}), c.to_string())
        }
    })
}

fn hm_cmd(cmd: HmCmd) -> Res {
    Ok(match cmd {
        HmCmd::Lyndon { n, max_len } => {
            words_output(&hm::lyndon_words(n, max_len))
        }
        HmCmd::Basic { n, max_len } => {
            words_output(&hm::basic_words_all_letters(n, max_len.unwrap_or(n as usize)))
        }
        HmCmd::Rank { c, ranks } => {
            let p = RankProfile::new(c, ranks, GroupOrder::Finite(1)).map_err(err)?;
            let (degree, rank) = hm::tofib_first_rank(&p).map_err(err)?;
            Output::new(json!({"degree": degree, "rank": rank.to_string()}), format!("degree {degree}, rank {rank}"))
        }
        HmCmd::RankGroup { c, ranks, order } => {
            let g = match order.as_deref() {
                None => GroupOrder::Finite(1),
                Some("inf") | Some("infinite") => GroupOrder::Infinite,
                Some(s) => GroupOrder::Finite(s.parse().map_err(|_| format!("bad group order '{s}'"))?),
            };
            let r = hm::tofib_first_rank_with_group(&RankProfile::new(c, ranks, g).map_err(err)?);
            let text = match &r.rank {
                hm::RankValue::Exact(x) => format!("degree {}, rank {x}", r.degree),
                hm::RankValue::Expr(e) => format!("degree {}, rank {e}", r.degree),
            };
            Output::new(serde_json::to_value(&r).expect("serializable"), text)
        }
        HmCmd::Jconn { n, c } => {
            let k = hm::connectivity_of_j(n, c);
            Output::new(json!({"connectivity": k}), k.to_string())
        }
    })
}

fn grasper_cmd(cmd: GrasperCmd, g: &Global) -> Res {
    let parse = |s: &str, shift| DecoratedLieElement::parse(s, group(g)?, shift).map_err(err);
    Ok(match cmd {
        GrasperCmd::Reduce { element, shift } => {
            let e = grasper::decorated_reduce(&parse(&element, shift)?);
            Output::new(decorated_json(&e), e.to_string())
        }
        GrasperCmd::Bracket { left, right, shift } => {
            let e = grasper::grasper_bracket(&parse(&left, shift)?, &parse(&right, shift)?).map_err(err)?;
            Output::new(decorated_json(&e), e.to_string())
        }
        GrasperCmd::Act { perm: p, element, shift } => {
            let e = parse(&element, shift)?;
            let s = perm(&p, e.labels().iter().copied().max().unwrap_or(0) as usize)?;
            let out = grasper::decorated_act(&s, &e).map_err(err)?;
            Output::new(decorated_json(&out), out.to_string())
        }
        GrasperCmd::Rank { n, shift, order } => {
            let order = match order {
                Some(o) => o,
                None => group(g)?.order() as u64,
            };
            let r: BigInt = grasper::decorated_rank(n, shift, order);
            Output::new(json!({"rank": r.to_string()}), r.to_string())
        }
    })
}

fn verify_cmd(cmd: VerifyCmd, g: &Global) -> Res {
    let opts = VerifyOptions { seed: g.seed, max_n: g.max_n };
    let reports: Vec<CriterionReport> = match cmd {
        VerifyCmd::All => verify::run_all(&opts),
        VerifyCmd::Module { name } => verify::module_criteria(&name)
            .ok_or_else(|| format!("unknown module '{name}'"))?
            .iter()
            .map(|&id| verify::run_criterion(id, &opts))
            .collect(),
    };
    let ok = reports.iter().all(|r| r.pass);
    let text: Vec<String> = reports.iter().map(ToString::to_string).collect();
    let mut out = Output::new(serde_json::to_value(&reports).expect("serializable"), text.join("\n"));
    out.ok = ok;
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Lie(c) => lie(c),
        Command::Pc(c) => pc(c),
        Command::Tree(c) => tree_cmd(c),
        Command::Hm(c) => hm_cmd(c),
        Command::Grasper(c) => grasper_cmd(c, &cli.global),
        Command::Verify(c) => verify_cmd(c, &cli.global),
    };
    match result {
        Ok(out) => {
            let body = if cli.global.json { out.json.to_string() } else { out.text.trim_end().to_string() };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
