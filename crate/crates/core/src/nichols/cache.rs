//! On-disk layer cache: one text file per degree under a directory named by
//! the braiding fingerprint.
//!
//! ```text
//! nichols-layer-cache 1
//! field <p> <n>
//! braiding <sha256>
//! letters <|B|>
//! layer <degree> <dim> <previous dim>
//! words
//! <letter indices>          (one line per basis element)
//! tails <w_0> <w_1> ...
//! keys <k_0> <k_1> ...
//! mult
//! <x> <u>: <i>=<scalar> ... (one line per letter and previous basis element)
//! deriv
//! <y> <i>: <j>=<scalar> ... (one line per letter and basis element)
//! end
//! ```
//!
//! Scalars use the `[c0,c1,...]` coefficient encoding. Files are written to a
//! temporary name and renamed into place.

use std::fs;
use std::path::{Path, PathBuf};

use super::Layer;
use crate::braidings::GroupTypeBraiding;
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::scalars::Field;

const MAGIC: &str = "nichols-layer-cache 1";

pub(super) struct LayerStore {
    dir: PathBuf,
}

impl LayerStore {
    pub fn open(root: &Path, braiding: &GroupTypeBraiding) -> Result<LayerStore> {
        let dir = root.join(braiding.fingerprint());
        fs::create_dir_all(&dir)?;
        Ok(LayerStore { dir })
    }

    fn path(&self, degree: usize) -> PathBuf {
        self.dir.join(format!("layer-{degree:03}.txt"))
    }

    /// Consecutive cached layers starting at degree 1.
    pub fn load(&self, braiding: &GroupTypeBraiding) -> Result<Vec<Layer>> {
        let mut out: Vec<Layer> = Vec::new();
        let mut prev_dim = 1;
        loop {
            let degree = out.len() + 1;
            let path = self.path(degree);
            if !path.exists() {
                return Ok(out);
            }
            let text = fs::read_to_string(&path)?;
            let layer = parse_layer(braiding, &text, degree, prev_dim)
                .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
            prev_dim = layer.dim();
            let stop = layer.dim() == 0;
            out.push(layer);
            if stop {
                return Ok(out);
            }
        }
    }

    pub fn save(&self, braiding: &GroupTypeBraiding, layer: &Layer) -> Result<()> {
        let path = self.path(layer.degree);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, render_layer(braiding, layer))?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

fn render_sparse(f: &Field, v: &SparseVec, out: &mut String) {
    for (i, s) in v {
        out.push(' ');
        out.push_str(&i.to_string());
        out.push('=');
        out.push_str(&f.encode(s));
    }
}

pub(super) fn render_layer(braiding: &GroupTypeBraiding, layer: &Layer) -> String {
    let f = braiding.field();
    let prev_dim = layer.mult.first().map_or(0, Vec::len);
    let mut s = String::new();
    s.push_str(MAGIC);
    s.push('\n');
    s.push_str(&format!("{}\n", f.spec()));
    s.push_str(&format!("braiding {}\n", braiding.fingerprint()));
    s.push_str(&format!("letters {}\n", braiding.len()));
    s.push_str(&format!(
        "layer {} {} {}\n",
        layer.degree,
        layer.dim(),
        prev_dim
    ));
    s.push_str("words\n");
    for w in &layer.words {
        let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
        s.push_str(&parts.join(" "));
        s.push('\n');
    }
    s.push_str("tails");
    for w in &layer.tails {
        s.push(' ');
        s.push_str(&w.to_string());
    }
    s.push('\n');
    s.push_str("keys");
    for k in &layer.keys {
        s.push(' ');
        s.push_str(&k.to_string());
    }
    s.push('\n');
    for (name, table) in [("mult", &layer.mult), ("deriv", &layer.deriv)] {
        s.push_str(name);
        s.push('\n');
        for (a, row) in table.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                s.push_str(&format!("{a} {b}:"));
                render_sparse(f, v, &mut s);
                s.push('\n');
            }
        }
    }
    s.push_str("end\n");
    s
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Cache(msg.into())
}

fn parse_num<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| bad(format!("expected a number, found `{s}`")))
}

fn expect_line<'a>(lines: &mut impl Iterator<Item = &'a str>, want: &str) -> Result<()> {
    match lines.next() {
        Some(l) if l == want => Ok(()),
        Some(l) => Err(bad(format!("expected `{want}`, found `{l}`"))),
        None => Err(bad(format!("expected `{want}`, found end of file"))),
    }
}

fn parse_list<'a, T: std::str::FromStr>(
    lines: &mut impl Iterator<Item = &'a str>,
    name: &str,
    len: usize,
) -> Result<Vec<T>> {
    let line = lines.next().ok_or_else(|| bad(format!("missing {name}")))?;
    let mut toks = line.split_whitespace();
    if toks.next() != Some(name) {
        return Err(bad(format!("missing {name}")));
    }
    let out = toks.map(parse_num::<T>).collect::<Result<Vec<_>>>()?;
    if out.len() != len {
        return Err(bad(format!("wrong number of {name}")));
    }
    Ok(out)
}

fn parse_table<'a>(
    f: &Field,
    lines: &mut impl Iterator<Item = &'a str>,
    rows: usize,
    cols: usize,
) -> Result<Vec<Vec<SparseVec>>> {
    let mut table = vec![Vec::with_capacity(cols); rows];
    for a in 0..rows {
        for b in 0..cols {
            let line = lines.next().ok_or_else(|| bad("truncated table"))?;
            let (head, body) = line.split_once(':').ok_or_else(|| bad("missing `:`"))?;
            if head != format!("{a} {b}") {
                return Err(bad(format!("expected row `{a} {b}`, found `{head}`")));
            }
            let mut v = SparseVec::new();
            for tok in body.split_whitespace() {
                let (i, c) = tok.split_once('=').ok_or_else(|| bad("missing `=`"))?;
                let i: u32 = parse_num(i)?;
                if v.last().is_some_and(|(j, _)| *j >= i) {
                    return Err(bad("indices not increasing"));
                }
                let c = f.decode(c)?;
                if f.is_zero(&c) {
                    return Err(bad("stored zero coefficient"));
                }
                v.push((i, c));
            }
            table[a].push(v);
        }
    }
    Ok(table)
}

pub(super) fn parse_layer(
    braiding: &GroupTypeBraiding,
    text: &str,
    degree: usize,
    prev_dim: usize,
) -> Result<Layer> {
    let f = braiding.field();
    let nb = braiding.len();
    let mut lines = text.lines();
    expect_line(&mut lines, MAGIC)?;
    expect_line(&mut lines, &f.spec().to_string())?;
    expect_line(&mut lines, &format!("braiding {}", braiding.fingerprint()))?;
    expect_line(&mut lines, &format!("letters {nb}"))?;
    let head = lines.next().ok_or_else(|| bad("missing layer line"))?;
    let parts: Vec<&str> = head.split_whitespace().collect();
    if parts.len() != 4 || parts[0] != "layer" {
        return Err(bad(format!("bad layer line `{head}`")));
    }
    let (deg, dim, pd): (usize, usize, usize) = (
        parse_num(parts[1])?,
        parse_num(parts[2])?,
        parse_num(parts[3])?,
    );
    if deg != degree || pd != prev_dim {
        return Err(bad(format!(
            "layer {deg} over {pd} does not continue degree {} of dimension {prev_dim}",
            degree - 1
        )));
    }
    expect_line(&mut lines, "words")?;
    let mut words = Vec::with_capacity(dim);
    for _ in 0..dim {
        let l = lines.next().ok_or_else(|| bad("truncated words"))?;
        let w = l
            .split_whitespace()
            .map(parse_num::<u16>)
            .collect::<Result<Vec<_>>>()?;
        if w.len() != degree || w.iter().any(|&x| x as usize >= nb) {
            return Err(bad(format!("bad word `{l}`")));
        }
        words.push(w);
    }
    let tails = parse_list::<u32>(&mut lines, "tails", dim)?;
    if tails.iter().any(|&w| w as usize >= prev_dim) {
        return Err(bad("tail index out of range"));
    }
    let keys = parse_list::<u64>(&mut lines, "keys", dim)?;
    expect_line(&mut lines, "mult")?;
    let mult = parse_table(f, &mut lines, nb, prev_dim)?;
    expect_line(&mut lines, "deriv")?;
    let deriv = parse_table(f, &mut lines, nb, dim)?;
    expect_line(&mut lines, "end")?;
    let out_of_range = |t: &Vec<Vec<SparseVec>>, bound: usize| {
        t.iter()
            .flatten()
            .any(|v| v.last().is_some_and(|(i, _)| *i as usize >= bound))
    };
    if out_of_range(&mult, dim) || out_of_range(&deriv, prev_dim) {
        return Err(bad("coordinate index out of range"));
    }
    Ok(Layer {
        degree,
        words,
        tails,
        keys,
        mult,
        deriv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nichols::{build, build_with, BuildOptions};
    use crate::scalars::FieldSpec;

    fn a2(f: &Field) -> GroupTypeBraiding {
        let i = f.zeta();
        let m = vec![vec![f.from_int(-1), i.clone()], vec![i, f.from_int(-1)]];
        GroupTypeBraiding::diagonal(f.clone(), m).unwrap()
    }

    #[test]
    fn layers_round_trip() {
        let f = Field::new(FieldSpec::cyclotomic(4)).unwrap();
        let b = a2(&f);
        let n = build(&b, 24).unwrap();
        let mut prev = 1;
        for layer in &n.layers()[1..] {
            let text = render_layer(&b, layer);
            assert_eq!(&parse_layer(&b, &text, layer.degree, prev).unwrap(), layer);
            prev = layer.dim();
        }
    }

    #[test]
    fn cache_resumes_and_rejects_corruption() {
        let f = Field::new(FieldSpec::cyclotomic(4)).unwrap();
        let b = a2(&f);
        let dir = tempfile::tempdir().unwrap();
        let opts = |max_degree| BuildOptions {
            max_degree,
            cache_dir: Some(dir.path().to_path_buf()),
        };
        let partial = build_with(&b, &opts(2), &|_, _| {}).unwrap();
        assert!(!partial.is_complete());
        let full = build_with(&b, &opts(24), &|_, _| {}).unwrap();
        let fresh = build(&b, 24).unwrap();
        assert_eq!(full.layers(), fresh.layers());
        assert!(full.is_complete());

        let store = dir.path().join(b.fingerprint());
        let p = store.join("layer-002.txt");
        let text = fs::read_to_string(&p).unwrap().replace("mult", "mul");
        fs::write(&p, text).unwrap();
        assert!(matches!(
            build_with(&b, &opts(24), &|_, _| {}),
            Err(Error::Cache(_))
        ));
    }
}
