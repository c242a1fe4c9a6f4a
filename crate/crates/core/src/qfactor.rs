//! Factorization of graded traces into q-symbols `(N)_{λt^k}`.

use crate::error::{Error, Result};
use crate::scalars::{Field, Scalar, TracePoly};

/// `(N)_{λt^k} = 1 + λt^k + … + (λt^k)^{N−1}`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSymbol {
    pub n: u32,
    pub lambda: Scalar,
    pub k: usize,
}

pub fn qsymbol(f: &Field, n: u32, lambda: &Scalar, k: usize) -> TracePoly {
    let mut coeffs = vec![f.zero(); (n as usize - 1) * k + 1];
    let mut p = f.one();
    for j in 0..n as usize {
        coeffs[j * k] = p.clone();
        p = f.mul(&p, lambda);
    }
    TracePoly::from_coeffs(f, coeffs)
}

impl QSymbol {
    pub fn expand(&self, f: &Field) -> TracePoly {
        qsymbol(f, self.n, &self.lambda, self.k)
    }

    /// `λt^k` as printed inside the subscript.
    fn argument(&self, f: &Field) -> String {
        let t = if self.k == 1 {
            "t".to_string()
        } else {
            format!("t^{}", self.k)
        };
        match f.format(&self.lambda).as_str() {
            "1" => t,
            "-1" => format!("-{t}"),
            l => format!("{l} {t}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSymbolFactorization {
    pub leading: Scalar,
    /// Sorted by `(k, N, discrete log of λ)`.
    pub symbols: Vec<QSymbol>,
    pub remainder: TracePoly,
}

/// Search limits for [`factor`].
#[derive(Clone, Debug)]
pub struct FactorBounds {
    pub max_n: u32,
    pub max_k: usize,
}

impl Default for FactorBounds {
    fn default() -> Self {
        FactorBounds {
            max_n: 5,
            max_k: 24,
        }
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// `format`, falling back to the coefficient encoding when the printed form
/// would not read back as a single token.
fn scalar_token(f: &Field, c: &Scalar) -> String {
    let s = f.format(c);
    if s.contains(' ') || s.starts_with('(') {
        f.encode(c)
    } else {
        s
    }
}

fn sort_key(f: &Field, s: &QSymbol) -> (usize, u32, u32) {
    (s.k, s.n, f.discrete_log(&s.lambda).unwrap_or(u32::MAX))
}

/// Greedy extraction: `k` ascending, then prime `N ≤ max_n` descending, then
/// `λ` over the field's roots of unity in discrete-log order, dividing while
/// exact. Composite sizes are never needed since `(ab)_x = (a)_x (b)_{x^a}`.
pub fn factor(f: &Field, p: &TracePoly, bounds: &FactorBounds) -> QSymbolFactorization {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let c0 = p.coeff(f, 0);
    let leading = if f.is_zero(&c0) { f.one() } else { c0 };
    let mut rest = p.scale(f, &f.inv(&leading).expect("nonzero"));
    let roots = f.unit_roots();
    let mut symbols = Vec::new();
    for k in 1..=bounds.max_k {
        if rest.degree().unwrap_or(0) < k {
            break;
        }
        for n in (2..=bounds.max_n).rev().filter(|&n| is_prime(n)) {
            for lambda in &roots {
                let d = qsymbol(f, n, lambda, k);
                loop {
                    if rest.degree() < d.degree() {
                        break;
                    }
                    let (q, exact) = rest.exact_div(f, &d).expect("q-symbols are monic at 0");
                    if !exact {
                        break;
                    }
                    rest = q;
                    symbols.push(QSymbol {
                        n,
                        lambda: lambda.clone(),
                        k,
                    });
                }
            }
        }
    }
    symbols.sort_by_key(|s| sort_key(f, s));
    QSymbolFactorization {
        leading,
        symbols,
        remainder: rest,
    }
}

impl QSymbolFactorization {
    pub fn expand(&self, f: &Field) -> TracePoly {
        self.symbols
            .iter()
            .fold(self.remainder.scale(f, &self.leading), |acc, s| {
                acc.mul(f, &s.expand(f))
            })
    }

    /// True when the remainder is `1`.
    pub fn is_complete(&self, f: &Field) -> bool {
        self.remainder == TracePoly::one(f)
    }

    /// q-symbol notation, e.g. `(2)_{-t}^2 (3)_{t}`.
    pub fn notation(&self, f: &Field) -> String {
        let mut parts = Vec::new();
        if !f.is_one(&self.leading) {
            parts.push(scalar_token(f, &self.leading));
        }
        let mut i = 0;
        while i < self.symbols.len() {
            let s = &self.symbols[i];
            let mut j = i + 1;
            while j < self.symbols.len() && self.symbols[j] == *s {
                j += 1;
            }
            let base = format!("({})_{{{}}}", s.n, s.argument(f));
            parts.push(if j - i > 1 {
                format!("{base}^{}", j - i)
            } else {
                base
            });
            i = j;
        }
        if !self.is_complete(f) {
            parts.push(format!("R{}", self.remainder.format_coeffs(f)));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// Machine form `c; (N,λ,k) ...; remainder`.
    pub fn machine(&self, f: &Field) -> String {
        let syms: Vec<String> = self
            .symbols
            .iter()
            .map(|s| format!("({},{},{})", s.n, f.format(&s.lambda), s.k))
            .collect();
        format!(
            "{}; {}; {}",
            scalar_token(f, &self.leading),
            syms.join(" "),
            self.remainder.format_coeffs(f)
        )
    }
}

/// Parses the notation printed by [`QSymbolFactorization::notation`] and
/// expands it. Accepts an optional leading scalar, `1` for the empty product,
/// and symbols `(N)_{λ t^k}` with optional `^e` exponents.
pub fn parse_notation(f: &Field, s: &str) -> Result<TracePoly> {
    let bad = |m: &str| Error::MalformedFactorization(format!("{m} in `{s}`"));
    let mut out = TracePoly::one(f);
    let mut rest = s.trim();
    if let Some(first) = rest.split_whitespace().next() {
        if !first.starts_with('(') {
            let c = f.parse_scalar(first)?;
            out = out.scale(f, &c);
            rest = rest[first.len()..].trim_start();
        }
    }
    while !rest.is_empty() {
        let after_open = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
        let close = after_open.find(')').ok_or_else(|| bad("missing `)`"))?;
        let n: u32 = after_open[..close]
            .trim()
            .parse()
            .map_err(|_| bad("bad symbol size"))?;
        if n == 0 {
            return Err(bad("symbol size 0"));
        }
        let tail = after_open[close + 1..]
            .strip_prefix("_{")
            .ok_or_else(|| bad("expected `_{`"))?;
        let end = tail.find('}').ok_or_else(|| bad("missing `}`"))?;
        let arg = tail[..end].trim();
        let (prefix, k) = if let Some(pos) = arg.rfind("t^") {
            let k: usize = arg[pos + 2..]
                .trim()
                .parse()
                .map_err(|_| bad("bad degree"))?;
            (&arg[..pos], k)
        } else if let Some(p) = arg.strip_suffix('t') {
            (p, 1)
        } else {
            return Err(bad("argument must end in t or t^k"));
        };
        if k == 0 {
            return Err(bad("degree 0"));
        }
        let prefix = prefix.trim();
        let lambda = match prefix {
            "" => f.one(),
            "-" => f.neg(&f.one()),
            p => f.parse_scalar(p)?,
        };
        rest = tail[end + 1..].trim_start();
        let mut exp = 1u32;
        if let Some(e) = rest.strip_prefix('^') {
            let digits: String = e.chars().take_while(|c| c.is_ascii_digit()).collect();
            exp = digits.parse().map_err(|_| bad("bad exponent"))?;
            rest = e[digits.len()..].trim_start();
        }
        out = out.mul(f, &qsymbol(f, n, &lambda, k).pow(f, exp));
    }
    Ok(out)
}
