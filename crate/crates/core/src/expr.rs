//! Text syntax for algebra elements.
//!
//! ```text
//! expr    = ["+" | "-"] product { ("+" | "-") product }
//! product = unary { ("*" | "." | "/") unary }
//! unary   = "-" unary | power
//! power   = atom [ "^" integer ]
//! atom    = number | "zeta(" integer ")" [ "^" ["-"] integer ] | "i" [ "^" ["-"] integer ]
//!         | "t[" path "]" | "t*[" path "]" | "q[" vertex "]" | "(" expr ")"
//! path    = edge { "," edge } | vertex
//! number  = digits [ "." digits ] [ ("e" | "E") ["+" | "-"] digits ]
//! ```
//!
//! `t[e,f].t*[g]` is the product `t_{ef} t_g*`. A bare scalar `c` stands for
//! `c·1 = c·Σ_v q_v`. Division is only by rational scalars in exact mode.
//! Products are evaluated in the twisted algebra of the given context.

use thiserror::Error;

use crate::algebra::{AlgebraElement, Term, TwistContext};
use crate::kgraph::{KGraph, Path};
use crate::phase::Phase;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("at offset {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Clone, Debug)]
enum Value<S: Scalar> {
    Scalar(S),
    Elem(AlgebraElement<S>),
}

struct Parser<'a, S: Scalar> {
    ctx: &'a TwistContext,
    src: &'a str,
    pos: usize,
    _marker: std::marker::PhantomData<S>,
}

pub fn parse_element<S: Scalar>(ctx: &TwistContext, src: &str) -> Result<AlgebraElement<S>, ParseError> {
    let mut p = Parser { ctx, src, pos: 0, _marker: std::marker::PhantomData };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(p.into_elem(v))
}

impl<'a, S: Scalar> Parser<'a, S> {
    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError { pos: self.pos, msg: msg.into() }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{tok}'")))
        }
    }

    fn into_elem(&self, v: Value<S>) -> AlgebraElement<S> {
        match v {
            Value::Elem(a) => a,
            Value::Scalar(c) => self.ctx.unit::<S>().scale(&c),
        }
    }

    fn add(&self, a: Value<S>, b: Value<S>) -> Value<S> {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.add(&y)),
            (a, b) => Value::Elem(self.into_elem(a).add(&self.into_elem(b))),
        }
    }

    fn mul(&self, a: Value<S>, b: Value<S>) -> Value<S> {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.mul(&y)),
            (Value::Scalar(c), Value::Elem(e)) | (Value::Elem(e), Value::Scalar(c)) => Value::Elem(e.scale(&c)),
            (Value::Elem(x), Value::Elem(y)) => Value::Elem(self.ctx.mul(&x, &y)),
        }
    }

    fn neg(v: Value<S>) -> Value<S> {
        match v {
            Value::Scalar(c) => Value::Scalar(c.neg()),
            Value::Elem(e) => Value::Elem(e.neg()),
        }
    }

    fn expr(&mut self) -> Result<Value<S>, ParseError> {
        let negate = if self.eat("-") {
            true
        } else {
            self.eat("+");
            false
        };
        let mut acc = self.product()?;
        if negate {
            acc = Self::neg(acc);
        }
        loop {
            if self.eat("+") {
                let rhs = self.product()?;
                acc = self.add(acc, rhs);
            } else if self.eat("-") {
                let rhs = self.product()?;
                acc = self.add(acc, Self::neg(rhs));
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Value<S>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat("*") || self.eat(".") {
                let rhs = self.unary()?;
                acc = self.mul(acc, rhs);
            } else if self.eat("/") {
                let at = self.pos;
                let Value::Scalar(d) = self.unary()? else {
                    return Err(ParseError { pos: at, msg: "can only divide by a scalar".into() });
                };
                let inv = d.try_inv().ok_or(ParseError { pos: at, msg: format!("cannot divide by {d}") })?;
                acc = self.mul(acc, Value::Scalar(inv));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Value<S>, ParseError> {
        if self.eat("-") {
            return Ok(Self::neg(self.unary()?));
        }
        let base = self.atom()?;
        if self.eat("^") {
            let n = self.integer()?;
            if n < 0 {
                return Err(self.error("negative powers only apply to roots of unity"));
            }
            let mut acc = Value::Scalar(S::one());
            for _ in 0..n {
                acc = self.mul(acc, base.clone());
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let neg = self.eat("-");
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(self.error("expected an integer"));
        }
        let n: i64 = digits.parse().map_err(|_| self.error("integer out of range"))?;
        self.pos += digits.len();
        Ok(if neg { -n } else { n })
    }

    fn root_power(&mut self, num: i64, den: i64) -> Result<Value<S>, ParseError> {
        let j = if self.eat("^") { self.integer()? } else { 1 };
        S::from_phase(&Phase::from_ratio(num * j, den))
            .map(Value::Scalar)
            .ok_or_else(|| self.error("root of unity not representable"))
    }

    fn names(&mut self, close: char) -> Result<Vec<&'a str>, ParseError> {
        self.skip_ws();
        let Some(end) = self.rest().find(close) else {
            return Err(self.error(format!("missing '{close}'")));
        };
        let inner = &self.rest()[..end];
        self.pos += end + close.len_utf8();
        let names: Vec<&str> = inner.split(',').map(str::trim).collect();
        if names.iter().any(|n| n.is_empty()) {
            return Err(self.error("empty name in path"));
        }
        Ok(names)
    }

    fn path(&mut self) -> Result<Path, ParseError> {
        let at = self.pos;
        let names = self.names(']')?;
        let g = self.ctx.graph();
        let res = if names.len() == 1 && g.vertex_id(names[0]).is_ok() {
            g.vertex_path(names[0])
        } else {
            g.path(&names)
        };
        res.map_err(|e| ParseError { pos: at, msg: e.to_string() })
    }

    fn atom(&mut self) -> Result<Value<S>, ParseError> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        if c.is_ascii_digit() || c == '.' {
            return self.number();
        }
        if self.eat("(") {
            let v = self.expr()?;
            self.expect(")")?;
            return Ok(v);
        }
        if self.eat("zeta(") {
            let n = self.integer()?;
            self.expect(")")?;
            if n <= 0 {
                return Err(self.error("zeta needs a positive order"));
            }
            return self.root_power(1, n);
        }
        if self.eat("t*[") {
            let p = self.path()?;
            return Ok(Value::Elem(self.ctx.elem(self.ctx.t_star(&p))));
        }
        if self.eat("t[") {
            let p = self.path()?;
            return Ok(Value::Elem(self.ctx.elem(self.ctx.t(&p))));
        }
        if self.eat("q[") {
            let at = self.pos;
            let names = self.names(']')?;
            let [v] = names.as_slice() else {
                return Err(ParseError { pos: at, msg: "q[..] takes one vertex".into() });
            };
            let id = self.ctx.graph().vertex_id(v).map_err(|e| ParseError { pos: at, msg: e.to_string() })?;
            return Ok(Value::Elem(self.ctx.elem(self.ctx.q(id))));
        }
        if self.rest().starts_with('i') && !self.rest()[1..].starts_with(|c: char| c.is_alphanumeric()) {
            self.pos += 1;
            return self.root_power(1, 4);
        }
        Err(self.error(format!("unexpected '{c}'")))
    }

    fn number(&mut self) -> Result<Value<S>, ParseError> {
        let rest = self.rest();
        let mut end = rest.find(|c: char| !(c.is_ascii_digit() || c == '.')).unwrap_or(rest.len());
        let tail = &rest[end..];
        if tail.starts_with(['e', 'E']) {
            let exp = &tail[1..];
            let sign = usize::from(exp.starts_with(['+', '-']));
            let digits = exp[sign..].chars().take_while(char::is_ascii_digit).count();
            if digits > 0 {
                end += 1 + sign + digits;
            }
        }
        let lit = &rest[..end];
        let v = S::from_decimal(lit).ok_or_else(|| self.error(format!("bad number '{lit}'")))?;
        self.pos += end;
        Ok(Value::Scalar(v))
    }
}

/// `t[λ].t*[μ]`, shortened to `q[v]`, `t[λ]` or `t*[μ]` when paths are
/// vertices.
pub fn format_term(graph: &KGraph, t: &Term) -> String {
    let (l, m) = (t.lambda(), t.mu());
    match (l.is_vertex(), m.is_vertex()) {
        (true, true) => format!("q[{}]", graph.path_label(l)),
        (false, true) => format!("t[{}]", graph.path_label(l)),
        (true, false) => format!("t*[{}]", graph.path_label(m)),
        (false, false) => format!("t[{}].t*[{}]", graph.path_label(l), graph.path_label(m)),
    }
}

/// Canonical text form; terms appear in basis order.
pub fn format_element<S: Scalar>(graph: &KGraph, a: &AlgebraElement<S>) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (t, c)) in a.iter().enumerate() {
        let term = format_term(graph, t);
        let lit = c.literal();
        let (neg, body) = if lit == "1" || lit == "1.0" {
            (false, term)
        } else if lit == "-1" || lit == "-1.0" {
            (true, term)
        } else if !lit.contains(' ') {
            match lit.strip_prefix('-') {
                Some(rest) => (true, format!("{rest}*{term}")),
                None => (false, format!("{lit}*{term}")),
            }
        } else {
            (false, format!("({lit})*{term}"))
        };
        match (k, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::random::random_element;
    use crate::cyclo::Cyclo;
    use crate::grp::Cocycle;
    use crate::kgraph::examples::{c3, e2, t2};
    use crate::phase::Rational;
    use crate::scalar::Complex64;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn t2_ctx() -> TwistContext {
        TwistContext::degree(Arc::new(t2()), Cocycle::rotation(Rational::new(1, 3))).unwrap()
    }

    fn parse(ctx: &TwistContext, s: &str) -> AlgebraElement<Cyclo> {
        parse_element(ctx, s).unwrap()
    }

    #[test]
    fn torus_product_prints_root() {
        let ctx = t2_ctx();
        let ef = ctx.mul(&parse(&ctx, "t[e]"), &parse(&ctx, "t[f]"));
        assert_eq!(format_element(ctx.graph(), &ef), "zeta(3)*t[e,f]");
        assert_eq!(parse(&ctx, "t[e]*t[f]"), ef);
        assert_eq!(parse(&ctx, "t[f].t[e]"), parse(&ctx, "t[e,f]"));
    }

    #[test]
    fn documented_literal() {
        let ctx = t2_ctx();
        let a = parse(&ctx, "1/3*zeta(3)^2 * t[e,f].t*[f] + q[v]");
        let s = format_element(ctx.graph(), &a);
        // ζ₃² = −1 − ζ₃
        assert_eq!(s, "q[v] + (-1/3 - 1/3*zeta(3))*t[e,f].t*[f]");
        assert_eq!(parse(&ctx, &s), a);
    }

    #[test]
    fn scalars_and_units() {
        let ctx = TwistContext::untwisted(Arc::new(e2())).unwrap();
        let one = parse(&ctx, "1");
        assert_eq!(one, ctx.unit());
        assert_eq!(parse(&ctx, "q[v]*q[v]"), parse(&ctx, "q[v]"));
        assert!(parse(&ctx, "t*[e]*t[f]").is_zero());
        assert_eq!(format_element(ctx.graph(), &parse(&ctx, "t*[e]*t[f]")), "0");
        assert_eq!(parse(&ctx, "i^2*q[v]"), parse(&ctx, "-q[v]"));
        assert_eq!(parse(&ctx, "zeta(4)^-1*q[v]"), parse(&ctx, "zeta(4)^3*q[v]"));
        assert_eq!(parse(&ctx, "0.25*q[v]"), parse(&ctx, "1/4*q[v]"));
        assert_eq!(parse(&ctx, "q[v]/4"), parse(&ctx, "(1/2)^2*q[v]"));
        assert_eq!(parse(&ctx, "2.5e-1*q[v]"), parse(&ctx, "q[v]/4"));
    }

    #[test]
    fn parse_errors() {
        let ctx = t2_ctx();
        for bad in ["t[x]", "q[e]", "t[e", "1 +", "t[e] / t[f]", "t[e] / zeta(3)", "zeta(0)", "t[e] ^ -1", "t[e] t[f]", ""] {
            assert!(parse_element::<Cyclo>(&ctx, bad).is_err(), "{bad}");
        }
        let err = parse_element::<Cyclo>(&ctx, "t[e] + t[zz]").unwrap_err();
        assert_eq!(err.pos, 9);
    }

    #[test]
    fn float_mode() {
        let ctx = t2_ctx();
        let a: AlgebraElement<Complex64> = parse_element(&ctx, "t[e]*t[f]").unwrap();
        let s = format_element(ctx.graph(), &a);
        let back: AlgebraElement<Complex64> = parse_element(&ctx, &s).unwrap();
        assert_eq!(back, a);
        let b: AlgebraElement<Complex64> = parse_element(&ctx, "1e-3*t[e] - 2*i*t[f]").unwrap();
        let back: AlgebraElement<Complex64> = parse_element(&ctx, &format_element(ctx.graph(), &b)).unwrap();
        assert_eq!(back, b);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn round_trip_exact(seed in any::<u64>(), which in 0usize..3) {
            let ctx = match which {
                0 => t2_ctx(),
                1 => TwistContext::untwisted(Arc::new(e2())).unwrap(),
                _ => TwistContext::untwisted(Arc::new(c3())).unwrap(),
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let max = vec![2; ctx.graph().rank()];
            let a: AlgebraElement<Cyclo> = random_element(&ctx, &mut rng, 4, &max);
            let a = a.add(&random_element(&ctx, &mut rng, 3, &max).scale(&Cyclo::root_of_unity(1, 5).add(&Cyclo::one())));
            let printed = format_element(ctx.graph(), &a);
            prop_assert_eq!(parse(&ctx, &printed), a, "{}", printed);
        }

        #[test]
        fn round_trip_float(seed in any::<u64>()) {
            let ctx = t2_ctx();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a: AlgebraElement<Complex64> = random_element(&ctx, &mut rng, 5, &[2, 2]);
            let printed = format_element(ctx.graph(), &a);
            let back: AlgebraElement<Complex64> = parse_element(&ctx, &printed).unwrap();
            prop_assert_eq!(back, a, "{}", printed);
        }
    }
}
