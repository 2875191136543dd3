use bisetkit_algebra::{FpGroup, Report};
use bisetkit_bisets::{fmt_cycles, format_wr, WreathBiset};
use bisetkit_graphs::{GraphOfGroups, Pi1, Pi1Source};
use serde::Serialize;

#[derive(Serialize)]
pub struct EntryOut {
    pub name: String,
    pub kind: &'static str,
}

#[derive(Serialize)]
pub struct ParseOut {
    pub entries: Vec<EntryOut>,
}

#[derive(Serialize)]
pub struct IssueOut {
    pub context: String,
    pub message: String,
}

#[derive(Serialize)]
pub struct ValidateOut {
    pub kind: &'static str,
    pub ok: bool,
    pub issues: Vec<IssueOut>,
}

impl ValidateOut {
    pub fn new(kind: &'static str, r: &Report) -> Self {
        ValidateOut {
            kind,
            ok: r.is_ok(),
            issues: r.issues.iter().map(|i| IssueOut { context: i.context.clone(), message: i.message.clone() }).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct GeneratorOut {
    pub name: String,
    pub decorations: Vec<String>,
    pub cycles: String,
}

/// A wreath recursion; `text` re-parses to the same biset.
#[derive(Serialize)]
pub struct BisetOut {
    pub left: String,
    pub right: String,
    pub degree: usize,
    pub generators: Vec<GeneratorOut>,
    pub text: String,
}

impl BisetOut {
    pub fn new(b: &WreathBiset) -> Self {
        BisetOut {
            left: b.left.to_string(),
            right: b.right.to_string(),
            degree: b.degree,
            generators: b
                .gens
                .iter()
                .enumerate()
                .map(|(i, g)| GeneratorOut {
                    name: b.right.factor(i).name.clone(),
                    decorations: g.dec.iter().map(|w| b.left.fmt_word(w)).collect(),
                    cycles: fmt_cycles(&g.perm),
                })
                .collect(),
            text: format_wr(b, None),
        }
    }
}

#[derive(Serialize)]
pub struct Pi1GeneratorOut {
    pub name: String,
    pub source: String,
}

#[derive(Serialize)]
pub struct Pi1Out {
    pub base: String,
    pub group: String,
    pub generators: Vec<Pi1GeneratorOut>,
    pub relators: Vec<[String; 2]>,
}

impl Pi1Out {
    pub fn new(gog: &GraphOfGroups, base: usize, p: &Pi1) -> Self {
        let g: &FpGroup = &p.group;
        let gr = &gog.graph;
        Pi1Out {
            base: gr.name(base).to_string(),
            group: g.to_string(),
            generators: p
                .sources
                .iter()
                .enumerate()
                .map(|(i, s)| Pi1GeneratorOut {
                    name: g.factor(i).name.clone(),
                    source: match s {
                        Pi1Source::Vertex { vertex, factor } => {
                            format!("vertex {} factor {}", gr.name(*vertex), gog.groups[*vertex].factor(*factor).name)
                        }
                        Pi1Source::Stable { edge } => format!("stable letter of {}", gr.name(*edge)),
                    },
                })
                .collect(),
            relators: p.relators.iter().map(|(a, b)| [g.fmt_word(a), g.fmt_word(b)]).collect(),
        }
    }

    pub fn text(&self) -> String {
        let mut s = format!("pi1 at {} = {}\n", self.base, self.group);
        for g in &self.generators {
            s.push_str(&format!("  {}: {}\n", g.name, g.source));
        }
        for [a, b] in &self.relators {
            s.push_str(&format!("  {a} = {b}\n"));
        }
        s
    }
}

#[derive(Serialize)]
pub struct LiftTermOut {
    pub degree: usize,
    pub class: String,
}

#[derive(Serialize)]
pub struct LiftOut {
    pub class: String,
    pub lifts: Vec<LiftTermOut>,
}

#[derive(Serialize)]
pub struct OutsideOut {
    pub column: usize,
    pub class: String,
    pub weight: String,
}

/// `matrix[k][g]` is the weight of class `k` in the lift of class `g`.
#[derive(Serialize)]
pub struct EndoOut {
    pub classes: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub outside: Vec<OutsideOut>,
}

#[derive(Serialize)]
pub struct KernelOut {
    pub depth: usize,
    pub wordlen: usize,
    pub words: Vec<String>,
}

/// A serialized graph of bisets or bundle, for commands that build one.
#[derive(Serialize)]
pub struct TextOut {
    pub kind: &'static str,
    pub text: String,
}
