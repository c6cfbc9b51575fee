use std::fmt;
use std::sync::Arc;

use num_traits::{One, ToPrimitive, Zero};

use super::{parse, Expr, ExprKind, Span};
use crate::error::{Error, Result};
use crate::lambda::VirtualBundle;
use crate::ring::{GradedAlgebra, GradedClass, Scalar, Space};
use crate::spaces::{DiagonalClass, FormalScalar, Geometry, YClass};

/// Largest exponent accepted by `^` and by `sym`/`wedge`.
const MAX_EXPONENT: u32 = 256;

/// Result of evaluating an expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Number(Scalar),
    Class(GradedClass),
    Y(YClass),
    Diagonal(DiagonalClass),
    Scalar(FormalScalar),
    Bundle(VirtualBundle),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Number(_) => "number",
            Value::Class(_) => "class",
            Value::Y(_) => "class on Y",
            Value::Diagonal(_) => "class on XX with a diagonal term",
            Value::Scalar(_) => "integral",
            Value::Bundle(_) => "bundle",
        }
    }

    /// Canonical serialization; a diagonal class must materialize.
    pub fn to_canonical(&self) -> Result<String> {
        match self {
            Value::Diagonal(d) => Ok(d.materialize()?.to_string()),
            other => Ok(other.to_string()),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(q) => write!(f, "{q}"),
            Value::Class(c) => write!(f, "{c}"),
            Value::Y(y) => write!(f, "{y}"),
            Value::Diagonal(d) => write!(f, "{d}"),
            Value::Scalar(s) => write!(f, "{s}"),
            Value::Bundle(b) => write!(f, "{b}"),
        }
    }
}

fn eval_error(span: Span, message: impl fmt::Display) -> Error {
    Error::Eval(format!("{span}: {message}"))
}

struct Evaluator {
    geometry: Arc<Geometry>,
}

impl Evaluator {
    fn context(&self, space: Space) -> Option<&Arc<crate::ring::Context>> {
        match space {
            Space::X => Some(self.geometry.x()),
            Space::XX => Some(self.geometry.xx()),
            Space::D => Some(self.geometry.d()),
            Space::Y => None,
        }
    }

    fn ident(&self, name: &str, space: Space, span: Span) -> Result<Value> {
        let g = &self.geometry;
        let bundle = match (name, space) {
            ("TX", Space::X) => Some(g.tangent_bundle()?),
            ("TX", Space::D) => Some(g.tangent_bundle_on_d()?),
            ("ell", Space::D) => Some(g.tautological_line()?),
            ("Tp", Space::D) => Some(g.relative_tangent()?),
            ("O", s) if s != Space::Y => {
                let ctx = self.context(s).expect("not Y");
                Some(VirtualBundle::trivial(&GradedClass::zero(ctx), 1))
            }
            _ => None,
        };
        if let Some(b) = bundle {
            return Ok(Value::Bundle(b));
        }
        match space {
            Space::Y if name == "D" => Ok(Value::Y(g.exceptional_divisor())),
            Space::Y => match g.xx().table().get(name) {
                Some(_) => Ok(Value::Y(g.pullback_beta(&g.xx_class(name)?)?)),
                None => Err(self.unknown(name, space, span)),
            },
            Space::D => {
                if let Some(base) = name.strip_prefix("p_") {
                    if g.x().table().get(base).is_some() {
                        return Ok(Value::Class(g.pullback_p(&g.x_class(base)?)?));
                    }
                }
                self.generator(name, space, span)
            }
            _ => self.generator(name, space, span),
        }
    }

    fn generator(&self, name: &str, space: Space, span: Span) -> Result<Value> {
        let ctx = self.context(space).expect("not Y");
        match ctx.table().get(name) {
            Some(_) => Ok(Value::Class(GradedClass::generator(ctx, name)?)),
            None => Err(self.unknown(name, space, span)),
        }
    }

    fn unknown(&self, name: &str, space: Space, span: Span) -> Error {
        eval_error(
            span,
            format!("unknown identifier `{name}` on {space}(n={})", self.geometry.n()),
        )
    }

    fn eval(&self, e: &Expr, space: Space) -> Result<Value> {
        match &e.kind {
            ExprKind::Ident(name) => self.ident(name, space, e.span),
            ExprKind::Rational(q) => Ok(Value::Number(q.clone())),
            ExprKind::Add(a, b) => self.add(self.eval(a, space)?, self.eval(b, space)?, e.span),
            ExprKind::Sub(a, b) => {
                let rhs = self.scale(self.eval(b, space)?, &-Scalar::one(), e.span)?;
                self.add(self.eval(a, space)?, rhs, e.span)
            }
            ExprKind::Mul(a, b) => self.mul(self.eval(a, space)?, self.eval(b, space)?, e.span),
            ExprKind::Pow(a, k) => {
                if *k > MAX_EXPONENT {
                    return Err(eval_error(e.span, format!("exponent {k} exceeds {MAX_EXPONENT}")));
                }
                let base = self.eval(a, space)?;
                self.pow(base, *k, e.span)
            }
            ExprKind::Call(name, args) => self.call(name, args, space, e.span),
        }
    }

    /// A number as a value of the same kind as `like`.
    fn promote(&self, q: &Scalar, like: &Value, span: Span) -> Result<Value> {
        Ok(match like {
            Value::Number(_) => Value::Number(q.clone()),
            Value::Class(c) => Value::Class(GradedClass::constant(c.context(), q.clone())),
            Value::Y(y) => Value::Y(y.one_like().scale(q)),
            Value::Diagonal(d) => {
                let one = GradedClass::constant(d.kunneth().context(), q.clone());
                Value::Diagonal(DiagonalClass::from_kunneth(&self.geometry, one))
            }
            Value::Scalar(s) => Value::Scalar(FormalScalar::constant(s.context(), q.clone())),
            Value::Bundle(b) => {
                let rank = q
                    .is_integer()
                    .then(|| q.to_integer().to_i64())
                    .flatten()
                    .ok_or_else(|| eval_error(span, format!("bundle rank {q} is not an integer")))?;
                Value::Bundle(VirtualBundle::trivial(b.ch(), rank))
            }
        })
    }

    /// Brings `a` and `b` to a common kind.
    fn unify(&self, a: Value, b: Value, span: Span) -> Result<(Value, Value)> {
        Ok(match (a, b) {
            (Value::Number(q), b) if !matches!(b, Value::Number(_)) => {
                (self.promote(&q, &b, span)?, b)
            }
            (a, Value::Number(q)) if !matches!(a, Value::Number(_)) => {
                let b = self.promote(&q, &a, span)?;
                (a, b)
            }
            (Value::Class(c), Value::Diagonal(d)) if c.space() == Space::XX => {
                (Value::Diagonal(DiagonalClass::from_kunneth(&self.geometry, c)), Value::Diagonal(d))
            }
            (Value::Diagonal(d), Value::Class(c)) if c.space() == Space::XX => {
                (Value::Diagonal(d), Value::Diagonal(DiagonalClass::from_kunneth(&self.geometry, c)))
            }
            pair => pair,
        })
    }

    fn mismatch(op: &str, a: &Value, b: &Value, span: Span) -> Error {
        eval_error(span, format!("cannot {op} a {} and a {}", a.kind(), b.kind()))
    }

    fn add(&self, a: Value, b: Value, span: Span) -> Result<Value> {
        Ok(match self.unify(a, b, span)? {
            (Value::Number(x), Value::Number(y)) => Value::Number(x + y),
            (Value::Class(x), Value::Class(y)) => Value::Class(x.add(&y)?),
            (Value::Y(x), Value::Y(y)) => Value::Y(x.add(&y)?),
            (Value::Diagonal(x), Value::Diagonal(y)) => Value::Diagonal(x.add(&y)?),
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.add(&y)?),
            (Value::Bundle(x), Value::Bundle(y)) => Value::Bundle(x.direct_sum(&y)?),
            (a, b) => return Err(Self::mismatch("add", &a, &b, span)),
        })
    }

    fn scale(&self, v: Value, q: &Scalar, span: Span) -> Result<Value> {
        Ok(match v {
            Value::Number(x) => Value::Number(x * q),
            Value::Class(x) => Value::Class(x.scale(q)),
            Value::Y(x) => Value::Y(GradedAlgebra::scale(&x, q)),
            Value::Diagonal(x) => Value::Diagonal(x.scale(q)),
            Value::Scalar(x) => Value::Scalar(x.scale(q)),
            Value::Bundle(x) => {
                let m = self.promote(q, &Value::Bundle(x.clone()), span)?;
                match m {
                    Value::Bundle(m) => Value::Bundle(x.tensor(&m)?),
                    _ => unreachable!(),
                }
            }
        })
    }

    fn mul(&self, a: Value, b: Value, span: Span) -> Result<Value> {
        Ok(match (a, b) {
            (Value::Number(x), Value::Number(y)) => Value::Number(x * y),
            (Value::Number(q), v) | (v, Value::Number(q)) => self.scale(v, &q, span)?,
            (a, b) => match self.unify(a, b, span)? {
                (Value::Class(x), Value::Class(y)) => Value::Class(x.mul(&y)?),
                (Value::Y(x), Value::Y(y)) => Value::Y(x.mul(&y)?),
                (Value::Diagonal(x), Value::Diagonal(y)) => Value::Diagonal(x.mul(&y)?),
                (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.mul(&y)?),
                (Value::Bundle(x), Value::Bundle(y)) => Value::Bundle(x.tensor(&y)?),
                (a, b) => return Err(Self::mismatch("multiply", &a, &b, span)),
            },
        })
    }

    fn pow(&self, base: Value, k: u32, span: Span) -> Result<Value> {
        Ok(match base {
            Value::Number(q) => {
                let mut acc = Scalar::one();
                for _ in 0..k {
                    acc *= &q;
                }
                Value::Number(acc)
            }
            Value::Class(c) => Value::Class(c.pow(k)),
            other => {
                let mut acc = self.promote(&Scalar::one(), &other, span)?;
                for _ in 0..k {
                    acc = self.mul(acc, other.clone(), span)?;
                }
                acc
            }
        })
    }

    fn natural(&self, v: Value, span: Span) -> Result<u32> {
        match v {
            Value::Number(q) if q.is_integer() => q
                .to_integer()
                .to_u32()
                .filter(|k| *k <= MAX_EXPONENT)
                .ok_or_else(|| eval_error(span, format!("{q} is not a natural number <= {MAX_EXPONENT}"))),
            other => Err(eval_error(span, format!("expected a natural number, got a {}", other.kind()))),
        }
    }

    fn class_on(&self, v: Value, space: Space, span: Span) -> Result<GradedClass> {
        let ctx = self.context(space).expect("not Y");
        match v {
            Value::Number(q) => Ok(GradedClass::constant(ctx, q)),
            Value::Class(c) if **c.context() == **ctx => Ok(c),
            other => Err(eval_error(
                span,
                format!("expected a class on {space}, got a {}", describe(&other)),
            )),
        }
    }

    fn y_class(&self, v: Value, span: Span) -> Result<YClass> {
        match v {
            Value::Y(y) => Ok(y),
            Value::Number(q) => Ok(self.geometry.exceptional_divisor().one_like().scale(&q)),
            other => Err(eval_error(span, format!("expected a class on Y, got a {}", describe(&other)))),
        }
    }

    fn bundle(&self, v: Value, span: Span) -> Result<VirtualBundle> {
        match v {
            Value::Bundle(b) => Ok(b),
            other => Err(eval_error(span, format!("expected a bundle, got a {}", describe(&other)))),
        }
    }

    fn call(&self, name: &str, args: &[Expr], space: Space, span: Span) -> Result<Value> {
        let g = &self.geometry;
        let arity = match name {
            "sym" | "wedge" | "twist" | "grade" | "coeff_n" => 2,
            "chern" if args.len() == 2 => 2,
            _ => 1,
        };
        if args.len() != arity {
            return Err(eval_error(
                span,
                format!("{name} takes {arity} argument(s), got {}", args.len()),
            ));
        }
        let arg = |i: usize, s: Space| self.eval(&args[i], s);
        let at = |i: usize| args[i].span;
        Ok(match name {
            "pull_p" => match arg(0, Space::X)? {
                Value::Bundle(b) => Value::Bundle(VirtualBundle::from_ch(g.pullback_p(b.ch())?)),
                v => Value::Class(g.pullback_p(&self.class_on(v, Space::X, at(0))?)?),
            },
            "push_p" => {
                let y = self.class_on(arg(0, Space::D)?, Space::D, at(0))?;
                Value::Class(g.pushforward_p(&y)?)
            }
            "pull_f1" | "pull_f2" => {
                let x = self.class_on(arg(0, Space::X)?, Space::X, at(0))?;
                Value::Class(if name == "pull_f1" {
                    g.pullback_f1(&x)?
                } else {
                    g.pullback_f2(&x)?
                })
            }
            "pull_delta" => {
                let z = self.class_on(arg(0, Space::XX)?, Space::XX, at(0))?;
                Value::Class(g.pullback_delta(&z)?)
            }
            "pull_iota" => Value::Class(g.pullback_iota(&self.y_class(arg(0, Space::Y)?, at(0))?)?),
            "push_iota" => {
                let y = self.class_on(arg(0, Space::D)?, Space::D, at(0))?;
                Value::Y(g.pushforward_iota(&y)?)
            }
            "pull_beta" => {
                let z = self.class_on(arg(0, Space::XX)?, Space::XX, at(0))?;
                Value::Y(g.pullback_beta(&z)?)
            }
            "push_beta" => {
                let y = self.y_class(arg(0, Space::Y)?, at(0))?;
                let formal = g.pushforward_beta_formal(&y)?;
                if formal.diagonal().is_zero() {
                    Value::Class(formal.materialize()?)
                } else {
                    Value::Diagonal(formal)
                }
            }
            "integrate" => match arg(0, space)? {
                Value::Class(c) => Value::Scalar(g.integrate(&c)?),
                Value::Y(y) => Value::Scalar(g.integrate_y(&y)?),
                Value::Diagonal(d) => Value::Scalar(g.integrate_diagonal(&d)?),
                other => {
                    return Err(eval_error(at(0), format!("cannot integrate a {}", other.kind())))
                }
            },
            "todd" => Value::Class(self.bundle(arg(0, space)?, at(0))?.todd()?),
            "ch" => Value::Class(self.bundle(arg(0, space)?, at(0))?.into_ch()),
            "rank" => Value::Class(self.bundle(arg(0, space)?, at(0))?.rank()),
            "chern" => {
                let b = self.bundle(arg(0, space)?, at(0))?;
                if args.len() == 2 {
                    let j = self.natural(arg(1, space)?, at(1))?;
                    Value::Class(b.chern_class(j)?)
                } else {
                    Value::Class(b.chern_total()?)
                }
            }
            "sym" | "wedge" => {
                let b = self.bundle(arg(0, space)?, at(0))?;
                let j = self.natural(arg(1, space)?, at(1))?;
                Value::Bundle(if name == "sym" {
                    b.sym_power(j)?
                } else {
                    b.ext_power(j)?
                })
            }
            "dual" => Value::Bundle(self.bundle(arg(0, space)?, at(0))?.dual()?),
            "line" => match arg(0, space)? {
                Value::Class(c) => Value::Bundle(VirtualBundle::line_bundle(&c)?),
                other => {
                    return Err(eval_error(at(0), format!("expected a class, got a {}", other.kind())))
                }
            },
            "twist" => {
                let b = self.bundle(arg(0, space)?, at(0))?;
                match arg(1, space)? {
                    Value::Class(c) => Value::Bundle(b.twist(&c)?),
                    other => {
                        return Err(eval_error(at(1), format!("expected a class, got a {}", other.kind())))
                    }
                }
            }
            "grade" | "coeff_n" => {
                let k = self.natural(arg(1, space)?, at(1))?;
                match (name, arg(0, space)?) {
                    ("grade", Value::Class(c)) => Value::Class(c.graded_component(k)),
                    ("grade", Value::Y(y)) => Value::Y(y.graded_component(k)),
                    ("grade", Value::Number(q)) => {
                        Value::Number(if k == 0 { q } else { Scalar::zero() })
                    }
                    ("coeff_n", Value::Class(c)) => Value::Class(c.coefficient_in_n(k)),
                    (_, other) => {
                        return Err(eval_error(
                            at(0),
                            format!("{name} does not apply to a {}", other.kind()),
                        ))
                    }
                }
            }
            _ => return Err(eval_error(span, format!("unknown function `{name}`"))),
        })
    }
}

fn describe(v: &Value) -> String {
    match v {
        Value::Class(c) => format!("class on {}", c.context().describe()),
        other => other.kind().to_string(),
    }
}

/// Evaluates `expr` with identifiers read on `space`.
pub fn evaluate(expr: &Expr, space: Space, n: u32) -> Result<Value> {
    let ev = Evaluator {
        geometry: Geometry::new(n)?,
    };
    ev.eval(expr, space)
}

/// Parses, evaluates and serializes.
pub fn evaluate_str(text: &str, space: Space, n: u32) -> Result<String> {
    evaluate(&parse(text)?, space, n)?.to_canonical()
}
