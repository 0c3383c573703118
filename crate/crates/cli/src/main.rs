use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tamari_core::group::lambda_word;
use tamari_core::metrics::{self, DEFAULT_DIAMETER_CAP};
use tamari_core::polish_nf::{is_normal, normal_form};
use tamari_core::reversing::{double_reverse, left_gcd, reverse_left, reverse_right, right_lcm, ReversalOutcome};
use tamari_core::tamari::{self, JoinMethod};
use tamari_core::words::{a_to_x, act, x_to_a};
use tamari_core::{
    Address, Dyadic, GroupElement, PolishWord, Result, Side, SignedWord, TamariError, Tree, XWord,
};

#[derive(Parser)]
#[command(name = "tamari", version, about = "Tamari lattices and the Thompson group F")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the output to this file.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tree encodings and constructions.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// The Tamari order.
    #[command(subcommand)]
    Order(OrderCmd),
    /// Whole lattices.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Signed words over the rotation generators.
    #[command(subcommand)]
    Word(WordCmd),
    /// Elements of F given by words.
    #[command(subcommand)]
    Elem(ElemCmd),
    /// Rotation distance (or left-rotation distance with --plus).
    Dist {
        tree: String,
        other: String,
        #[arg(long)]
        plus: bool,
    },
    /// Diameter of the rotation graph of size-N trees.
    Diameter {
        n: usize,
        #[arg(long, default_value_t = DEFAULT_DIAMETER_CAP)]
        cap: usize,
    },
    /// Distance experiments.
    #[command(subcommand)]
    Exp(ExpCmd),
}

#[derive(Subcommand)]
enum TreeCmd {
    /// Size, Polish word, µ, depth and covering relation.
    Info { tree: String },
    /// Polish encoding over {x, o}.
    Polish { tree: String },
    /// Decode a Polish word.
    FromPolish { polish: String },
    /// Graphviz rendering.
    Dot { tree: String },
    Mirror { tree: String },
    /// Smallest tree having the address as a leaf.
    Zigzag { address: String },
    Comb {
        n: usize,
        #[arg(long, value_enum, default_value_t = CombSide::Right)]
        side: CombSide,
    },
    /// Address of leaf I (0-based).
    Leaf { tree: String, index: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum CombSide {
    Left,
    Right,
}

#[derive(Args)]
struct Pair {
    tree: String,
    other: String,
    #[arg(long, value_enum, default_value_t = Method::Polish)]
    method: Method,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Polish,
    Reversing,
    Covering,
}

impl From<Method> for JoinMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Polish => JoinMethod::Polish,
            Method::Reversing => JoinMethod::Reversing,
            Method::Covering => JoinMethod::Covering,
        }
    }
}

#[derive(Subcommand)]
enum OrderCmd {
    Leq { tree: String, other: String },
    Join(Pair),
    Meet(Pair),
    /// Covering relation as pairs (j, i), leaves numbered from 0.
    Covering { tree: String },
    /// Positive word mapping the right comb to the tree.
    CWord {
        tree: String,
        #[arg(long)]
        primed: bool,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// List the size-N trees in Polish order.
    Enum {
        n: usize,
        #[arg(long)]
        count: bool,
        #[arg(long)]
        hasse: bool,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReverseSide {
    Right,
    Left,
    Double,
}

#[derive(Subcommand)]
enum WordCmd {
    /// Apply a word to a tree.
    Act {
        #[arg(short = 't', long)]
        tree: String,
        #[arg(short = 'w', long)]
        word: String,
    },
    Reverse {
        word: String,
        #[arg(long, value_enum, default_value_t = ReverseSide::Right)]
        side: ReverseSide,
    },
    /// Polish normal form of the element.
    Nf { word: String },
    CheckNormal { word: String },
    Lambda { word: String },
    /// Lower bound on the length of the element from double reversing.
    LowerBound { word: String },
    Expand { word: String },
    Lcm { word: String, other: String },
    Gcd { word: String, other: String },
    /// Express a_α with the generators x_i = a_{1^i}.
    ToX { address: String },
    FromX { xword: String },
}

#[derive(Subcommand)]
enum ElemCmd {
    Mul { word: String, other: String },
    Inv { word: String },
    Eq { word: String, other: String },
    /// Reduced tree pair.
    Pair { word: String },
    /// Element from a tree pair.
    FromPair { neg: String, pos: String },
    /// Breakpoints of the piecewise-linear map, or its value at --at.
    Plmap {
        word: String,
        #[arg(long)]
        at: Option<String>,
    },
}

#[derive(Subcommand)]
enum ExpCmd {
    /// dist and dist⁺ on the family T_p, T'_p.
    Upfamily { p: usize },
    /// dist(Z_n, Z'_n) against 2n−6.
    Zigzag { n: usize },
    /// Reversal length of the sharp family against p+q+pq.
    Sharp { p: usize, q: usize },
}

struct Output {
    text: String,
    json: Value,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json }
    }
}

fn tree(s: &str) -> Result<Tree> {
    s.parse()
}

fn word(s: &str) -> Result<SignedWord> {
    s.parse()
}

fn address(s: &str) -> Result<Address> {
    s.parse()
}

fn addr_text(a: &Address) -> String {
    if a.is_empty() { "e".into() } else { a.to_string() }
}

fn reversal(out: &ReversalOutcome, w: SignedWord) -> Output {
    Output::new(
        format!("{w}\nnumerator: {}\ndenominator: {}\nsteps: {}", out.numerator, out.denominator, out.steps),
        json!({
            "word": w.to_string(),
            "numerator": out.numerator.to_string(),
            "denominator": out.denominator.to_string(),
            "steps": out.steps,
        }),
    )
}

fn element(f: &GroupElement) -> Output {
    Output::new(
        format!("{} -> {}", f.neg, f.pos),
        json!({ "neg": f.neg.to_string(), "pos": f.pos.to_string(), "nf": normal_form(f).to_string() }),
    )
}

fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}")).collect::<Vec<_>>().join("\n")
}

fn run_tree(cmd: TreeCmd) -> Result<Output> {
    Ok(match cmd {
        TreeCmd::Info { tree: t } => {
            let t = tree(&t)?;
            let cov = tamari::covering_of(&t).pairs();
            Output::new(
                table(&[
                    ("tree", t.to_string()),
                    ("size", t.size().to_string()),
                    ("polish", t.polish().to_string()),
                    ("depth", t.depth().to_string()),
                    ("mu", t.mu().to_string()),
                    ("covering", format!("{cov:?}")),
                ]),
                json!({
                    "tree": t.to_string(),
                    "size": t.size(),
                    "polish": t.polish().to_string(),
                    "depth": t.depth(),
                    "mu": t.mu(),
                    "covering": cov,
                }),
            )
        }
        TreeCmd::Polish { tree: t } => {
            let p = tree(&t)?.polish().to_string();
            Output::new(p.clone(), json!(p))
        }
        TreeCmd::FromPolish { polish } => {
            let t = Tree::from_polish(&polish.parse::<PolishWord>()?)?;
            Output::new(t.to_string(), json!(t.to_string()))
        }
        TreeCmd::Dot { tree: t } => {
            let dot = tree(&t)?.to_dot();
            Output::new(dot.trim_end(), json!(dot))
        }
        TreeCmd::Mirror { tree: t } => {
            let m = tree(&t)?.mirror();
            Output::new(m.to_string(), json!(m.to_string()))
        }
        TreeCmd::Zigzag { address: a } => {
            let z = Tree::zigzag(&address(&a)?);
            Output::new(z.to_string(), json!(z.to_string()))
        }
        TreeCmd::Comb { n, side } => {
            let side = match side {
                CombSide::Left => Side::Left,
                CombSide::Right => Side::Right,
            };
            let c = Tree::comb(n, side);
            Output::new(c.to_string(), json!(c.to_string()))
        }
        TreeCmd::Leaf { tree: t, index } => {
            let a = addr_text(&tree(&t)?.leaf_address(index)?);
            Output::new(a.clone(), json!(a))
        }
    })
}

fn run_order(cmd: OrderCmd) -> Result<Output> {
    Ok(match cmd {
        OrderCmd::Leq { tree: t, other } => {
            let b = tamari::leq(&tree(&t)?, &tree(&other)?)?;
            Output::new(b.to_string(), json!(b))
        }
        OrderCmd::Join(p) => {
            let j = tamari::join(&tree(&p.tree)?, &tree(&p.other)?, p.method.into())?;
            Output::new(j.to_string(), json!(j.to_string()))
        }
        OrderCmd::Meet(p) => {
            let m = tamari::meet(&tree(&p.tree)?, &tree(&p.other)?, p.method.into())?;
            Output::new(m.to_string(), json!(m.to_string()))
        }
        OrderCmd::Covering { tree: t } => {
            let pairs = tamari::covering_of(&tree(&t)?).pairs();
            let text = pairs.iter().map(|(j, i)| format!("{j} {i}")).collect::<Vec<_>>().join("\n");
            Output::new(text, json!(pairs))
        }
        OrderCmd::CWord { tree: t, primed } => {
            let w = tamari::c_word(&tree(&t)?, primed);
            Output::new(w.to_string(), json!(w.to_string()))
        }
    })
}

fn run_lattice(cmd: LatticeCmd) -> Result<Output> {
    let LatticeCmd::Enum { n, count, hasse, dot } = cmd;
    if count {
        let c = tamari::enumerate(n)?.len();
        return Ok(Output::new(c.to_string(), json!(c)));
    }
    if hasse || dot {
        let h = tamari::hasse(n)?;
        if dot {
            let d = h.to_dot();
            return Ok(Output::new(d.trim_end(), json!(d)));
        }
        let trees: Vec<String> = h.trees.iter().map(Tree::to_string).collect();
        let mut text: Vec<String> = trees.iter().enumerate().map(|(i, t)| format!("{i} {t}")).collect();
        text.extend(h.edges.iter().map(|(a, b)| format!("{a} -> {b}")));
        return Ok(Output::new(text.join("\n"), json!({ "trees": trees, "edges": h.edges })));
    }
    let trees: Vec<String> = tamari::enumerate(n)?.iter().map(Tree::to_string).collect();
    Ok(Output::new(trees.join("\n"), json!(trees)))
}

fn run_word(cmd: WordCmd) -> Result<Output> {
    Ok(match cmd {
        WordCmd::Act { tree: t, word: w } => {
            let out = act(&tree(&t)?, &word(&w)?)?;
            Output::new(out.to_string(), json!(out.to_string()))
        }
        WordCmd::Reverse { word: w, side } => {
            let w = word(&w)?;
            let (out, shown) = match side {
                ReverseSide::Right => {
                    let o = reverse_right(&w);
                    let s = o.right_word();
                    (o, s)
                }
                ReverseSide::Left => {
                    let o = reverse_left(&w);
                    let s = o.left_word();
                    (o, s)
                }
                ReverseSide::Double => {
                    let o = double_reverse(&w);
                    let s = o.right_word();
                    (o, s)
                }
            };
            reversal(&out, shown)
        }
        WordCmd::Nf { word: w } => {
            let nf = normal_form(&GroupElement::eval_word(&word(&w)?));
            Output::new(nf.to_string(), json!(nf.to_string()))
        }
        WordCmd::CheckNormal { word: w } => {
            let b = is_normal(&word(&w)?);
            Output::new(b.to_string(), json!(b))
        }
        WordCmd::Lambda { word: w } => {
            let l = lambda_word(&word(&w)?);
            Output::new(l.to_string(), json!(l))
        }
        WordCmd::LowerBound { word: w } => {
            let b = metrics::length_lower_bound(&word(&w)?);
            Output::new(b.to_string(), json!(b))
        }
        WordCmd::Expand { word: w } => {
            let e = word(&w)?.expand();
            Output::new(e.to_string(), json!(e.to_string()))
        }
        WordCmd::Lcm { word: u, other: v } => {
            let (u, v) = (positive(&u)?, positive(&v)?);
            let l = right_lcm(&u, &v);
            Output::new(
                format!("{}\ncomplements: {} | {}", l.lcm, l.v_complement, l.u_complement),
                json!({
                    "lcm": l.lcm.to_string(),
                    "v_complement": l.v_complement.to_string(),
                    "u_complement": l.u_complement.to_string(),
                }),
            )
        }
        WordCmd::Gcd { word: u, other: v } => {
            let g = left_gcd(&positive(&u)?, &positive(&v)?)?;
            Output::new(g.to_string(), json!(g.to_string()))
        }
        WordCmd::ToX { address: a } => {
            let x = a_to_x(&address(&a)?);
            Output::new(x.to_string(), json!(x.to_string()))
        }
        WordCmd::FromX { xword } => {
            let w = x_to_a(&xword.parse::<XWord>()?);
            Output::new(w.to_string(), json!(w.to_string()))
        }
    })
}

fn positive(s: &str) -> Result<SignedWord> {
    let w = word(s)?;
    if !w.is_positive() {
        return Err(TamariError::Parse(format!("expected a positive word, got {w}")));
    }
    Ok(w)
}

fn run_elem(cmd: ElemCmd) -> Result<Output> {
    let eval = |s: &str| word(s).map(|w| GroupElement::eval_word(&w));
    Ok(match cmd {
        ElemCmd::Mul { word: u, other: v } => element(&eval(&u)?.multiply(&eval(&v)?)),
        ElemCmd::Inv { word: u } => element(&eval(&u)?.inverse()),
        ElemCmd::Eq { word: u, other: v } => {
            let b = eval(&u)? == eval(&v)?;
            Output::new(b.to_string(), json!(b))
        }
        ElemCmd::Pair { word: u } => element(&eval(&u)?),
        ElemCmd::FromPair { neg, pos } => element(&GroupElement::from_pair(&tree(&neg)?, &tree(&pos)?)?),
        ElemCmd::Plmap { word: u, at } => {
            let map = eval(&u)?.to_pl_map();
            match at {
                Some(x) => {
                    let y = map.eval(x.parse::<Dyadic>()?)?;
                    Output::new(y.to_string(), json!(y.to_string()))
                }
                None => {
                    let pts: Vec<(String, String)> =
                        map.breakpoints.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect();
                    let text = pts.iter().map(|(x, y)| format!("{x} {y}")).collect::<Vec<_>>().join("\n");
                    Output::new(text, json!(pts))
                }
            }
        }
    })
}

fn run_exp(cmd: ExpCmd) -> Result<Output> {
    Ok(match cmd {
        ExpCmd::Upfamily { p } => {
            let fam = metrics::witness_family(p);
            let r = metrics::ratio_experiment(p)?;
            Output::new(
                table(&[
                    ("p", p.to_string()),
                    ("size", r.size.to_string()),
                    ("T_p", fam.t.to_string()),
                    ("T'_p", fam.t_prime.to_string()),
                    ("u_p", fam.u.to_string()),
                    ("w_p", fam.w.to_string()),
                    ("dist", r.dist.to_string()),
                    ("dist_plus", r.dist_plus.to_string()),
                    ("predicted_dist_plus", r.predicted_dist_plus.to_string()),
                    ("witness_length", r.witness_length.to_string()),
                    ("witness_valid", r.witness_valid.to_string()),
                    ("predicted_dist_bound", r.predicted_dist_bound.to_string()),
                ]),
                json!({
                    "p": p,
                    "size": r.size,
                    "t": fam.t.to_string(),
                    "t_prime": fam.t_prime.to_string(),
                    "u": fam.u.to_string(),
                    "w": fam.w.to_string(),
                    "dist": r.dist,
                    "dist_plus": r.dist_plus,
                    "predicted_dist_plus": r.predicted_dist_plus,
                    "witness_length": r.witness_length,
                    "witness_valid": r.witness_valid,
                    "predicted_dist_bound": r.predicted_dist_bound,
                }),
            )
        }
        ExpCmd::Zigzag { n } => {
            let r = metrics::zigzag_experiment(n)?;
            Output::new(
                table(&[
                    ("n", n.to_string()),
                    ("Z", r.z.to_string()),
                    ("Z'", r.z_prime.to_string()),
                    ("dist", r.dist.to_string()),
                    ("2n-6", r.predicted.to_string()),
                ]),
                json!({
                    "n": n,
                    "z": r.z.to_string(),
                    "z_prime": r.z_prime.to_string(),
                    "dist": r.dist,
                    "predicted": r.predicted,
                }),
            )
        }
        ExpCmd::Sharp { p, q } => {
            let r = metrics::sharp_experiment(p, q);
            Output::new(
                table(&[
                    ("p", p.to_string()),
                    ("q", q.to_string()),
                    ("numerator", r.numerator.to_string()),
                    ("denominator", r.denominator.to_string()),
                    ("a_length", r.a_length.to_string()),
                    ("p+q+pq", r.bound.to_string()),
                    ("steps", r.steps.to_string()),
                ]),
                json!({
                    "p": p,
                    "q": q,
                    "numerator": r.numerator.to_string(),
                    "denominator": r.denominator.to_string(),
                    "a_length": r.a_length,
                    "bound": r.bound,
                    "steps": r.steps,
                }),
            )
        }
    })
}

fn run(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Tree(c) => run_tree(c),
        Command::Order(c) => run_order(c),
        Command::Lattice(c) => run_lattice(c),
        Command::Word(c) => run_word(c),
        Command::Elem(c) => run_elem(c),
        Command::Dist { tree: t, other, plus } => {
            let (a, b) = (tree(&t)?, tree(&other)?);
            let d = if plus { metrics::dist_plus(&a, &b)? } else { metrics::dist(&a, &b)? };
            Ok(Output::new(d.to_string(), json!(d)))
        }
        Command::Diameter { n, cap } => {
            let d = metrics::diameter(n, cap)?;
            Ok(Output::new(d.to_string(), json!(d)))
        }
        Command::Exp(c) => run_exp(c),
    }
}

fn exit_code(e: &TamariError) -> u8 {
    match e {
        TamariError::Parse(_) | TamariError::MalformedPolish(_) => 2,
        TamariError::CapacityGuard { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("error: invalid usage"));
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let mut body = if cli.json { out.json.to_string() } else { out.text };
            body.push('\n');
            print!("{body}");
            if let Some(path) = cli.out {
                if let Err(e) = std::fs::write(&path, &body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.to_string().replace('\n', " "));
            ExitCode::from(exit_code(&e))
        }
    }
}
