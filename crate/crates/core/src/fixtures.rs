//! Reference matrices shipped with the crate.

use crate::linalg::{Dyadic, ExactMatrix, Gf3, LinalgError, Matrix};

const NON_FANO: &str = include_str!("../data/non_fano.txt");
const P8: &str = include_str!("../data/p8.txt");
const APPENDIX_A: &str = include_str!("../data/appendix_a.txt");
const APPENDIX_B: &str = include_str!("../data/appendix_b.txt");
const APPENDIX_C: &str = include_str!("../data/appendix_c.txt");
const APPENDIX_A_DYADIC: &str = include_str!("../data/appendix_a_dyadic.txt");
const APPENDIX_B_DYADIC: &str = include_str!("../data/appendix_b_dyadic.txt");
const APPENDIX_C_DYADIC: &str = include_str!("../data/appendix_c_dyadic.txt");
const APPENDIX_A_REPS: &str = include_str!("../data/appendix_a_reps.txt");
const APPENDIX_B_REPS: &str = include_str!("../data/appendix_b_reps.txt");
const APPENDIX_C_REPS: &str = include_str!("../data/appendix_c_reps.txt");

/// Which of the three worked examples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Appendix {
    A,
    B,
    C,
}

impl Appendix {
    pub const ALL: [Appendix; 3] = [Appendix::A, Appendix::B, Appendix::C];

    /// The example matroid as printed, over GF(3).
    pub fn ternary(self) -> Matrix<Gf3> {
        let text = match self {
            Appendix::A => APPENDIX_A,
            Appendix::B => APPENDIX_B,
            Appendix::C => APPENDIX_C,
        };
        ExactMatrix::parse_text(text)
            .expect("bundled fixture parses")
            .as_gf3()
            .expect("bundled fixture is over GF(3)")
            .clone()
    }

    /// A weak dyadic representation of the example matroid that reduces to
    /// [`Appendix::ternary`] mod 3.
    pub fn matrix(self) -> Matrix<Dyadic> {
        dyadic(match self {
            Appendix::A => APPENDIX_A_DYADIC,
            Appendix::B => APPENDIX_B_DYADIC,
            Appendix::C => APPENDIX_C_DYADIC,
        })
    }

    /// The displayed signed-graphic representations, in display-label order.
    pub fn displayed_reps(self) -> Vec<Matrix<Gf3>> {
        let text = match self {
            Appendix::A => APPENDIX_A_REPS,
            Appendix::B => APPENDIX_B_REPS,
            Appendix::C => APPENDIX_C_REPS,
        };
        parse_many(text)
            .expect("bundled fixture parses")
            .into_iter()
            .map(|m| m.as_gf3().expect("bundled fixture is over GF(3)").clone())
            .collect()
    }
}

pub fn non_fano() -> Matrix<Dyadic> {
    dyadic(NON_FANO)
}

pub fn p8() -> Matrix<Dyadic> {
    dyadic(P8)
}

fn dyadic(text: &str) -> Matrix<Dyadic> {
    ExactMatrix::parse_text(text)
        .expect("bundled fixture parses")
        .as_dyadic()
        .expect("bundled fixture is dyadic")
        .clone()
}

/// Parses several matrices separated by blank lines.
pub fn parse_many(text: &str) -> Result<Vec<ExactMatrix>, LinalgError> {
    let mut out = Vec::new();
    let mut block = String::new();
    for line in text.lines().chain(std::iter::once("")) {
        if line.trim().is_empty() {
            if block.lines().any(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#')) {
                out.push(ExactMatrix::parse_text(&block)?);
            }
            block.clear();
        } else {
            block.push_str(line);
            block.push('\n');
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load() {
        assert_eq!(non_fano().cols(), 7);
        assert_eq!(p8().cols(), 8);
        let sizes: Vec<_> = Appendix::ALL.iter().map(|a| (a.matrix().rows(), a.matrix().cols())).collect();
        assert_eq!(sizes, vec![(6, 10), (6, 10), (5, 9)]);
        let counts: Vec<_> = Appendix::ALL.iter().map(|a| a.displayed_reps().len()).collect();
        assert_eq!(counts, vec![11, 15, 3]);
    }

    #[test]
    fn fixtures_are_weak_dyadic() {
        assert!(non_fano().is_weak_dyadic());
        assert!(p8().is_weak_dyadic());
        for a in Appendix::ALL {
            assert!(a.matrix().is_weak_dyadic(), "{a:?}");
        }
    }

    #[test]
    fn appendix_lifts_reduce_to_printed_matrices() {
        for a in Appendix::ALL {
            let reduced = a.matrix().map(|v| Gf3::new(v.mod_p(3) as i64));
            assert_eq!(reduced, a.ternary(), "{a:?}");
        }
    }
}
