use std::collections::BTreeSet;
use std::fmt;

/// Formulas of the one-variable modal language. Negation, Δ and
/// equivalence are sugar and expand on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Bot,
    Top,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Sim(Box<Formula>),
    /// `[]`, read as the universal quantifier.
    Box(Box<Formula>),
    /// `<>`, read as the existential quantifier.
    Diamond(Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn sim(a: Formula) -> Self {
        Formula::Sim(Box::new(a))
    }

    pub fn nec(a: Formula) -> Self {
        Formula::Box(Box::new(a))
    }

    pub fn pos(a: Formula) -> Self {
        Formula::Diamond(Box::new(a))
    }

    /// `¬a = a → 0`.
    pub fn neg(a: Formula) -> Self {
        Formula::imp(a, Formula::Bot)
    }

    /// `Δa = ¬∼a`.
    pub fn delta(a: Formula) -> Self {
        Formula::neg(Formula::sim(a))
    }

    pub fn equiv(a: Formula, b: Formula) -> Self {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Bot | Formula::Top => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Sim(a) | Formula::Box(a) | Formula::Diamond(a) => a.collect_vars(out),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Bot | Formula::Top => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Sim(a) | Formula::Box(a) | Formula::Diamond(a) => 1 + a.depth(),
        }
    }

    /// Replaces variables by formulas.
    pub fn substitute(&self, f: &impl Fn(&str) -> Option<Formula>) -> Formula {
        match self {
            Formula::Var(v) => f(v).unwrap_or_else(|| self.clone()),
            Formula::Bot | Formula::Top => self.clone(),
            Formula::And(a, b) => Formula::and(a.substitute(f), b.substitute(f)),
            Formula::Or(a, b) => Formula::or(a.substitute(f), b.substitute(f)),
            Formula::Imp(a, b) => Formula::imp(a.substitute(f), b.substitute(f)),
            Formula::Sim(a) => Formula::sim(a.substitute(f)),
            Formula::Box(a) => Formula::nec(a.substitute(f)),
            Formula::Diamond(a) => Formula::pos(a.substitute(f)),
        }
    }

    fn is_atomic(&self) -> bool {
        matches!(self, Formula::Var(_) | Formula::Bot | Formula::Top)
    }

    fn is_binary(&self) -> bool {
        matches!(self, Formula::And(..) | Formula::Or(..) | Formula::Imp(..))
    }
}

struct Unary<'a>(&'a Formula);
struct Operand<'a>(&'a Formula);

impl fmt::Display for Unary<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_atomic() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "({})", self.0)
        }
    }
}

impl fmt::Display for Operand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_binary() {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Canonical form: operands of a unary connective are parenthesized unless
/// atomic, binary operands of a binary connective always are.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(v) => write!(f, "{v}"),
            Formula::Bot => write!(f, "0"),
            Formula::Top => write!(f, "1"),
            Formula::And(a, b) => write!(f, "{} & {}", Operand(a), Operand(b)),
            Formula::Or(a, b) => write!(f, "{} | {}", Operand(a), Operand(b)),
            Formula::Imp(a, b) => write!(f, "{} -> {}", Operand(a), Operand(b)),
            Formula::Sim(a) => write!(f, "~{}", Unary(a)),
            Formula::Box(a) => write!(f, "[]{}", Unary(a)),
            Formula::Diamond(a) => write!(f, "<>{}", Unary(a)),
        }
    }
}
