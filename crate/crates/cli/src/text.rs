//! Plain-text rendering of series.

use tmf3_core::graded::GradedMf;
use tmf3_core::series::{Coeff, MultiSeries, QLaurent, Rational};

pub trait Render {
    fn render(&self) -> String;
    /// Whether the rendering needs parentheses before a monomial.
    fn compound(&self) -> bool;
}

impl Render for Rational {
    fn render(&self) -> String {
        self.to_string()
    }

    fn compound(&self) -> bool {
        false
    }
}

impl Render for GradedMf {
    fn render(&self) -> String {
        self.to_string()
    }

    fn compound(&self) -> bool {
        self.numerator().len() > 1
    }
}

impl Render for QLaurent {
    fn render(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in self.terms() {
            let mono = match e {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{}", e),
            };
            parts.push(join_coeff(c, &mono));
        }
        if !self.is_exact() {
            parts.push(format!("O(q^{})", self.trunc()));
        }
        if parts.is_empty() {
            return "0".into();
        }
        signed_join(parts)
    }

    fn compound(&self) -> bool {
        self.terms().count() + usize::from(!self.is_exact()) > 1
    }
}

fn join_coeff(c: &Rational, mono: &str) -> String {
    let one = Rational::from_integer(1.into());
    if mono.is_empty() {
        c.to_string()
    } else if *c == one {
        mono.to_string()
    } else if *c == -one {
        format!("-{}", mono)
    } else {
        format!("{}*{}", c, mono)
    }
}

fn signed_join(parts: Vec<String>) -> String {
    let mut out = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&p);
        }
    }
    out
}

/// Terms in order of total degree.
pub fn render_series<R: Coeff + Render>(s: &MultiSeries<R>) -> String {
    let mut terms: Vec<_> = s.terms().collect();
    terms.sort_by_key(|(m, _)| (m.iter().sum::<u32>(), std::cmp::Reverse((*m).clone())));
    let mut parts = Vec::new();
    for (m, c) in terms {
        let mono: Vec<String> = s
            .vars()
            .iter()
            .zip(m)
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{}^{}", v, e) })
            .collect();
        let mono = mono.join("*");
        let coeff = c.render();
        let part = if mono.is_empty() {
            coeff
        } else if c.compound() {
            format!("({})*{}", coeff, mono)
        } else if coeff == "1" {
            mono
        } else if coeff == "-1" {
            format!("-{}", mono)
        } else {
            format!("{}*{}", coeff, mono)
        };
        parts.push(part);
    }
    let body = if parts.is_empty() { "0".to_string() } else { signed_join(parts) };
    format!("{} + O(deg {})", body, s.bound())
}

#[cfg(test)]
mod tests {
    use super::*;
    use tmf3_core::series::rat;

    #[test]
    fn laurent_text() {
        let f = QLaurent::from_terms([(0, rat(1, 1)), (1, rat(-5, 1)), (3, rat(1, 2))], 4);
        assert_eq!(f.render(), "1 - 5*q + 1/2*q^3 + O(q^4)");
    }

    #[test]
    fn series_text() {
        let s = MultiSeries::from_terms(
            vec!["x".into(), "y".into()],
            3,
            [(vec![1, 0], rat(1, 1)), (vec![0, 1], rat(1, 1)), (vec![1, 1], rat(-1, 1))],
        );
        assert_eq!(render_series(&s), "x + y - x*y + O(deg 3)");
    }
}
