//! Rendering helpers shared by the subcommands.

use std::fmt::Write;

use clap::ValueEnum;
use ihkl::complex::DimTable;
use ihkl::coxeter::{format_word, Permutation};
use ihkl::hecke::HeckeElement;
use ihkl::laurent::LaurentPoly;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// How permutations were written on the command line; output follows suit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Syntax {
    OneLine,
    Word,
}

impl Syntax {
    pub fn of(text: &str) -> Self {
        let t = text.trim();
        if t == "e" || t.starts_with('s') {
            Syntax::Word
        } else {
            Syntax::OneLine
        }
    }

    pub fn show(self, w: &Permutation) -> String {
        match self {
            Syntax::OneLine => w.to_string(),
            Syntax::Word => format_word(&w.reduced_word()),
        }
    }
}

/// `0:0 1:0 2:2`.
pub fn dims_line(t: &DimTable) -> String {
    t.iter().map(|(d, v)| format!("{d}:{v}")).collect::<Vec<_>>().join(" ")
}

pub fn dims_csv(t: &DimTable) -> String {
    let mut out = String::from("degree,dim\n");
    for (d, v) in t {
        writeln!(out, "{d},{v}").unwrap();
    }
    out
}

pub fn dims_json(t: &DimTable) -> Value {
    Value::Object(t.iter().map(|(d, v)| (d.to_string(), json!(v))).collect())
}

/// `v^-l*(P_1(v^2)*T:u_1 + ...)`, the form `v^{-l(w)} Σ P_{u,w}(v^2) T_u`.
pub fn factored(c: &HeckeElement, l: usize, syntax: Syntax) -> String {
    let inner = c.scale(&LaurentPoly::v(l as i64)).render(|w| syntax.show(w));
    if l == 0 {
        inner
    } else {
        format!("v^-{l}*({inner})")
    }
}

pub fn json_map(entries: impl IntoIterator<Item = (String, Value)>) -> Value {
    Value::Object(entries.into_iter().collect::<Map<_, _>>())
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}
