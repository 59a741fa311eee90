//! Series specifications and their input grammar.
//!
//! Grammar (whitespace-insensitive, `+` and `-` both mean XOR):
//!
//! ```text
//! poly:1+t+t^3
//! rat:(1)/(1+t+t^2)
//! named:catalan
//! fix:X=1+t*X^2
//! ```

use crate::bits::BitBuf;
use crate::error::{Error, Result};
use crate::series::BitSeries;

/// A finite polynomial over GF(2) (exact, not truncated).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitPoly {
    bits: BitBuf,
}

impl BitPoly {
    pub fn zero() -> Self {
        BitPoly {
            bits: BitBuf::zeros(1),
        }
    }

    pub fn from_support(ones: &[usize]) -> Self {
        let len = ones.iter().copied().max().map_or(1, |m| m + 1);
        BitPoly {
            bits: BitBuf::from_indices(len, ones),
        }
    }

    fn canon(bits: BitBuf) -> Self {
        let deg = bits.ones().last().copied().map_or(0, |m| m);
        BitPoly {
            bits: bits.resized(deg + 1),
        }
    }

    pub fn support(&self) -> Vec<usize> {
        self.bits.ones()
    }

    pub fn degree(&self) -> Option<usize> {
        self.bits.ones().last().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn coeff(&self, k: usize) -> bool {
        k < self.bits.len() && self.bits.get(k)
    }

    pub fn add(&self, other: &BitPoly) -> BitPoly {
        let len = self.bits.len().max(other.bits.len());
        let mut b = self.bits.resized(len);
        b.xor_assign(&other.bits.resized(len));
        Self::canon(b)
    }

    pub fn mul(&self, other: &BitPoly) -> BitPoly {
        if self.is_zero() || other.is_zero() {
            return BitPoly::zero();
        }
        let len = self.degree().unwrap() + other.degree().unwrap() + 1;
        let mut acc = BitBuf::zeros(len);
        let rhs = other.bits.resized(len);
        for a in self.bits.ones() {
            acc.xor_shifted(&rhs, a);
        }
        Self::canon(acc)
    }

    pub fn pow(&self, e: u32) -> BitPoly {
        let mut acc = BitPoly::from_support(&[0]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Expand as a series exact to `trunc` coefficients (higher polynomial
    /// terms are genuinely zero, so any truncation is exact).
    pub fn to_series(&self, trunc: usize) -> BitSeries {
        BitSeries::from_support(trunc, &self.support())
    }
}

impl std::fmt::Display for BitPoly {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ones = self.support();
        if ones.is_empty() {
            return write!(fm, "0");
        }
        let terms: Vec<String> = ones
            .iter()
            .map(|&i| match i {
                0 => "1".into(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            })
            .collect();
        write!(fm, "{}", terms.join("+"))
    }
}

/// Expression tree for fixed-point specs `X = Φ(X)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Const(BitPoly),
    X,
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn eval(&self, x: &BitSeries, trunc: usize) -> BitSeries {
        match self {
            Expr::Const(p) => p.to_series(trunc),
            Expr::X => x.clone(),
            Expr::Add(a, b) => a.eval(x, trunc).add(&b.eval(x, trunc)),
            Expr::Mul(a, b) => {
                let va = a.eval(x, trunc);
                let vb = b.eval(x, trunc);
                va.mul(&vb)
            }
            Expr::Pow(e, k) => e
                .eval(x, trunc)
                .pow(*k as usize, trunc)
                .expect("operand certified at trunc"),
        }
    }

    fn fmt_prec(&self, fm: &mut std::fmt::Formatter<'_>, prec: u8) -> std::fmt::Result {
        match self {
            Expr::Const(p) => {
                let s = p.to_string();
                if s.contains('+') && prec > 0 {
                    write!(fm, "({s})")
                } else {
                    write!(fm, "{s}")
                }
            }
            Expr::X => write!(fm, "X"),
            Expr::Add(a, b) => {
                if prec > 0 {
                    write!(fm, "(")?;
                }
                a.fmt_prec(fm, 0)?;
                write!(fm, "+")?;
                b.fmt_prec(fm, 0)?;
                if prec > 0 {
                    write!(fm, ")")?;
                }
                Ok(())
            }
            Expr::Mul(a, b) => {
                a.fmt_prec(fm, 1)?;
                write!(fm, "*")?;
                b.fmt_prec(fm, 1)
            }
            Expr::Pow(e, k) => {
                e.fmt_prec(fm, 2)?;
                write!(fm, "^{k}")
            }
        }
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.fmt_prec(fm, 0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NamedSeries {
    Catalan,
    Motzkin,
    PascalG,
    PascalF,
    FibonacciF,
    Geometric,
    Zero,
    One,
    T,
}

impl NamedSeries {
    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "catalan" => NamedSeries::Catalan,
            "motzkin" => NamedSeries::Motzkin,
            "pascal_g" => NamedSeries::PascalG,
            "pascal_f" => NamedSeries::PascalF,
            "fibonacci_f" => NamedSeries::FibonacciF,
            "geometric" => NamedSeries::Geometric,
            "zero" => NamedSeries::Zero,
            "one" => NamedSeries::One,
            "t" => NamedSeries::T,
            _ => {
                return Err(Error::Parse(format!(
                    "unknown named series `{name}` (expected one of catalan, motzkin, \
                     pascal_g, pascal_f, fibonacci_f, geometric, zero, one, t)"
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            NamedSeries::Catalan => "catalan",
            NamedSeries::Motzkin => "motzkin",
            NamedSeries::PascalG => "pascal_g",
            NamedSeries::PascalF => "pascal_f",
            NamedSeries::FibonacciF => "fibonacci_f",
            NamedSeries::Geometric => "geometric",
            NamedSeries::Zero => "zero",
            NamedSeries::One => "one",
            NamedSeries::T => "t",
        }
    }

    fn definition(&self) -> SeriesSpec {
        let poly = |ones: &[usize]| BitPoly::from_support(ones);
        match self {
            // C = 1 + t C^2
            NamedSeries::Catalan => SeriesSpec::FixedPoint(Expr::Add(
                Box::new(Expr::Const(poly(&[0]))),
                Box::new(Expr::Mul(
                    Box::new(Expr::Const(poly(&[1]))),
                    Box::new(Expr::Pow(Box::new(Expr::X), 2)),
                )),
            )),
            // M = 1 + t M + t^2 M^2
            NamedSeries::Motzkin => SeriesSpec::FixedPoint(Expr::Add(
                Box::new(Expr::Add(
                    Box::new(Expr::Const(poly(&[0]))),
                    Box::new(Expr::Mul(
                        Box::new(Expr::Const(poly(&[1]))),
                        Box::new(Expr::X),
                    )),
                )),
                Box::new(Expr::Mul(
                    Box::new(Expr::Const(poly(&[2]))),
                    Box::new(Expr::Pow(Box::new(Expr::X), 2)),
                )),
            )),
            NamedSeries::PascalG | NamedSeries::Geometric => SeriesSpec::Rational {
                num: poly(&[0]),
                den: poly(&[0, 1]),
            },
            NamedSeries::PascalF => SeriesSpec::Rational {
                num: poly(&[1]),
                den: poly(&[0, 1]),
            },
            NamedSeries::FibonacciF => SeriesSpec::Polynomial(poly(&[1, 2])),
            NamedSeries::Zero => SeriesSpec::Polynomial(BitPoly::zero()),
            NamedSeries::One => SeriesSpec::Polynomial(poly(&[0])),
            NamedSeries::T => SeriesSpec::Polynomial(poly(&[1])),
        }
    }
}

/// A generative description of one series.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SeriesSpec {
    Polynomial(BitPoly),
    Rational { num: BitPoly, den: BitPoly },
    Named(NamedSeries),
    FixedPoint(Expr),
}

impl SeriesSpec {
    pub fn polynomial(ones: &[usize]) -> Self {
        SeriesSpec::Polynomial(BitPoly::from_support(ones))
    }

    pub fn zero() -> Self {
        SeriesSpec::Polynomial(BitPoly::zero())
    }

    /// Expand to a series exact to `trunc` coefficients.
    pub fn expand(&self, trunc: usize) -> Result<BitSeries> {
        if trunc < 1 {
            return Err(Error::InvalidSpec("truncation order must be >= 1".into()));
        }
        match self {
            SeriesSpec::Polynomial(p) => Ok(p.to_series(trunc)),
            SeriesSpec::Rational { num, den } => {
                if !den.coeff(0) {
                    return Err(Error::InvalidSpec(
                        "rational denominator must have constant term 1".into(),
                    ));
                }
                num.to_series(trunc).div(&den.to_series(trunc))
            }
            SeriesSpec::Named(n) => n.definition().expand(trunc),
            SeriesSpec::FixedPoint(phi) => {
                if *phi == Expr::X {
                    return Err(Error::ExpansionDivergence(
                        "X = X does not determine a series".into(),
                    ));
                }
                // Iterate X <- phi(X) from phi(0). The contraction property
                // is validated dynamically: after k iterations a contraction
                // has settled at least the first k+1 coefficients, so the
                // first index at which consecutive iterates differ must be
                // at least the iteration count.
                let mut x = phi.eval(&BitSeries::zero(trunc), trunc);
                for it in 1..=trunc {
                    let next = phi.eval(&x, trunc);
                    if next == x {
                        return Ok(x);
                    }
                    let diff = (0..trunc)
                        .find(|&k| next.coeff(k) != x.coeff(k))
                        .expect("iterates differ");
                    if diff < it {
                        return Err(Error::ExpansionDivergence(format!(
                            "`{phi}` reopens coefficient {diff} at iteration {it}; \
                             not a contraction"
                        )));
                    }
                    x = next;
                }
                let next = phi.eval(&x, trunc);
                if next == x {
                    Ok(x)
                } else {
                    Err(Error::ExpansionDivergence(format!(
                        "`{phi}` did not stabilize within {trunc} iterations"
                    )))
                }
            }
        }
    }
}

impl std::fmt::Display for SeriesSpec {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeriesSpec::Polynomial(p) => write!(fm, "poly:{p}"),
            SeriesSpec::Rational { num, den } => write!(fm, "rat:({num})/({den})"),
            SeriesSpec::Named(n) => write!(fm, "named:{}", n.name()),
            SeriesSpec::FixedPoint(e) => write!(fm, "fix:X={e}"),
        }
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in `{}`", self.pos, self.src))
    }

    fn uint(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<u64>().map_err(|_| self.err("number too large"))
    }

    fn expr(&mut self, allow_x: bool) -> Result<Expr> {
        let mut acc = self.term(allow_x)?;
        while matches!(self.peek(), Some('+') | Some('-')) {
            self.bump();
            let rhs = self.term(allow_x)?;
            acc = Expr::Add(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn term(&mut self, allow_x: bool) -> Result<Expr> {
        let mut acc = self.factor(allow_x)?;
        while self.peek() == Some('*') {
            self.bump();
            let rhs = self.factor(allow_x)?;
            acc = Expr::Mul(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn factor(&mut self, allow_x: bool) -> Result<Expr> {
        let base = self.atom(allow_x)?;
        if self.peek() == Some('^') {
            self.bump();
            let e = self.uint()?;
            if e > 64 {
                return Err(self.err("exponent too large (max 64)"));
            }
            Ok(Expr::Pow(Box::new(base), e as u32))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self, allow_x: bool) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr(allow_x)?;
                self.expect(')')?;
                Ok(e)
            }
            Some('t') => {
                self.bump();
                Ok(Expr::Const(BitPoly::from_support(&[1])))
            }
            Some('X') if allow_x => {
                self.bump();
                Ok(Expr::X)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(Expr::Const(if n % 2 == 1 {
                    BitPoly::from_support(&[0])
                } else {
                    BitPoly::zero()
                }))
            }
            Some(c) => Err(self.err(&format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn done(&self) -> bool {
        self.pos == self.chars.len()
    }
}

/// Evaluate an X-free expression to an exact polynomial.
fn eval_poly(e: &Expr) -> BitPoly {
    match e {
        Expr::Const(p) => p.clone(),
        Expr::X => unreachable!("X rejected by parser in polynomial context"),
        Expr::Add(a, b) => eval_poly(a).add(&eval_poly(b)),
        Expr::Mul(a, b) => eval_poly(a).mul(&eval_poly(b)),
        Expr::Pow(a, k) => eval_poly(a).pow(*k),
    }
}

pub const GRAMMAR_HELP: &str = "series spec grammar: `poly:1+t+t^3`, `rat:(1)/(1+t+t^2)`, \
`named:catalan`, `fix:X=1+t*X^2`; whitespace is ignored and `+` means XOR";

/// Parse a series spec string.
pub fn parse_series_spec(src: &str) -> Result<SeriesSpec> {
    let trimmed: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let (kind, rest) = trimmed.split_once(':').ok_or_else(|| {
        Error::Parse(format!("missing `kind:` prefix in `{src}`; {GRAMMAR_HELP}"))
    })?;
    match kind {
        "poly" => {
            let mut p = Parser::new(rest);
            let e = p.expr(false)?;
            if !p.done() {
                return Err(p.err("trailing input"));
            }
            Ok(SeriesSpec::Polynomial(eval_poly(&e)))
        }
        "rat" => {
            let mut p = Parser::new(rest);
            p.expect('(')?;
            let num = p.expr(false)?;
            p.expect(')')?;
            p.expect('/')?;
            p.expect('(')?;
            let den = p.expr(false)?;
            p.expect(')')?;
            if !p.done() {
                return Err(p.err("trailing input"));
            }
            let den = eval_poly(&den);
            if !den.coeff(0) {
                return Err(Error::InvalidSpec(
                    "rational denominator must have constant term 1".into(),
                ));
            }
            Ok(SeriesSpec::Rational {
                num: eval_poly(&num),
                den,
            })
        }
        "named" => Ok(SeriesSpec::Named(NamedSeries::parse(rest)?)),
        "fix" => {
            let mut p = Parser::new(rest);
            p.expect('X')?;
            p.expect('=')?;
            let e = p.expr(true)?;
            if !p.done() {
                return Err(p.err("trailing input"));
            }
            Ok(SeriesSpec::FixedPoint(e))
        }
        other => Err(Error::Parse(format!(
            "unknown spec kind `{other}`; {GRAMMAR_HELP}"
        ))),
    }
}
