use super::{nakayama_nu, EquivError, NuDirection};
use crate::complexes::{minimize, ProjComplex};
use crate::silting::flags;

/// `ν^m(X) ≅ complex`, which has span at most two.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub m: i64,
    pub complex: ProjComplex,
    /// Span after each step, starting with the input.
    pub trajectory: Vec<usize>,
}

/// Applies `ν` or `ν^{-1}` until the span is at most two. Each step keeps the
/// direction of the previous one (initially `ν`) when that shrinks the span,
/// and otherwise takes whichever direction gives the smaller span.
pub fn reduce_to_two_term(x: &ProjComplex, max_steps: usize) -> Result<Reduction, EquivError> {
    let mut cur = minimize(x);
    let mut m = 0i64;
    let mut trajectory = vec![cur.span()];
    let mut last = NuDirection::Forward;
    for _ in 0..max_steps {
        if cur.span() <= 2 {
            break;
        }
        let first = nakayama_nu(&cur, last)?;
        let (dir, next) = if first.span() < cur.span() {
            (last, first)
        } else {
            let other = last.flip();
            let second = nakayama_nu(&cur, other)?;
            if second.span() < first.span() {
                (other, second)
            } else {
                (last, first)
            }
        };
        m += match dir {
            NuDirection::Forward => 1,
            NuDirection::Inverse => -1,
        };
        cur = next;
        last = dir;
        trajectory.push(cur.span());
    }
    if cur.span() > 2 {
        if !flags(x)?.0.tilting {
            return Err(EquivError::NotTilting);
        }
        return Err(EquivError::MaxSteps {
            steps: max_steps,
            trajectory,
        });
    }
    // ν is an autoequivalence, so this decides whether the input is tilting
    if !flags(&cur)?.0.tilting {
        return Err(EquivError::NotTilting);
    }
    Ok(Reduction {
        m,
        complex: cur,
        trajectory,
    })
}
