//! Dense real polynomials in one variable, ascending coefficients.

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Poly {
    pub c: Vec<f64>,
}

impl Poly {
    pub fn new(c: Vec<f64>) -> Self {
        Poly { c }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
    }

    pub fn derivative(&self) -> Poly {
        if self.c.len() <= 1 {
            return Poly { c: vec![0.0] };
        }
        Poly {
            c: self
                .c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &a)| k as f64 * a)
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_derivative() {
        let p = Poly::new(vec![1.0, -2.0, 3.0]);
        assert_eq!(p.eval(2.0), 9.0);
        assert_eq!(p.derivative().c, vec![-2.0, 6.0]);
    }
}
