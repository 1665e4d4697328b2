//! Reductions from the OR problem onto the search problems.
//!
//! Each construction maps a bit vector X to an instance whose witness exists
//! iff OR(X) = 1; they drive the lower-bound-style soundness suites.

use crate::error::{Error, Result};
use crate::oracle::{FunctionInstance, GraphInstance};

/// OR over M bits as claw finding: f = `[1]` on a singleton domain, g(i) = X_i.
pub fn or_to_claw(bits: &[bool]) -> Result<(FunctionInstance, FunctionInstance)> {
    if bits.is_empty() {
        return Err(Error::InvalidArgument(
            "OR instance must be non-empty".into(),
        ));
    }
    let f = FunctionInstance::new(vec![1], false)?;
    let g = FunctionInstance::new(bits.iter().map(|&b| i64::from(b)).collect(), false)?;
    Ok((f, g))
}

/// OR over N bits as element distinctness on N+1 points:
/// f(i) = i*(1 - X_i) and f(N+1) = 0, so a collision exists iff some X_i = 1.
pub fn or_to_ed(bits: &[bool]) -> Result<FunctionInstance> {
    if bits.is_empty() {
        return Err(Error::InvalidArgument(
            "OR instance must be non-empty".into(),
        ));
    }
    let mut values: Vec<i64> = bits
        .iter()
        .enumerate()
        .map(|(i, &b)| if b { 0 } else { (i + 1) as i64 })
        .collect();
    values.push(0);
    FunctionInstance::new(values, false)
}

/// OR over N bits as claw finding between ordered tables:
/// f(i) = 2i+1 and g(i) = 2i + X_i share a value exactly where X_i = 1.
pub fn or_to_ordered_claw(bits: &[bool]) -> Result<(FunctionInstance, FunctionInstance)> {
    if bits.is_empty() {
        return Err(Error::InvalidArgument(
            "OR instance must be non-empty".into(),
        ));
    }
    let f: Vec<i64> = (1..=bits.len() as i64).map(|i| 2 * i + 1).collect();
    let g: Vec<i64> = bits
        .iter()
        .enumerate()
        .map(|(i, &b)| 2 * (i + 1) as i64 + i64::from(b))
        .collect();
    Ok((
        FunctionInstance::new(f, true)?,
        FunctionInstance::new(g, true)?,
    ))
}

/// OR over the C(n,2) edge slots as triangle finding: the input edges plus an
/// apex node joined to all of `[n]`. The result has a triangle iff OR(X) = 1
/// and exactly |X| + n edges.
pub fn or_to_triangle(n: usize, slots: &[bool]) -> Result<GraphInstance> {
    if n < 2 {
        return Err(Error::InvalidArgument("need at least 2 base nodes".into()));
    }
    if slots.len() != n * (n - 1) / 2 {
        return Err(Error::InvalidArgument(format!(
            "expected {} slots for n={n}, got {}",
            n * (n - 1) / 2,
            slots.len()
        )));
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for u in 1..=n {
        for v in (u + 1)..=n {
            if slots[idx] {
                edges.push((u, v));
            }
            idx += 1;
        }
    }
    let apex = n + 1;
    for u in 1..=n {
        edges.push((u, apex));
    }
    GraphInstance::new(n + 1, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has_claw(f: &FunctionInstance, g: &FunctionInstance) -> bool {
        (1..=f.size()).any(|x| (1..=g.size()).any(|y| f.value(x).unwrap() == g.value(y).unwrap()))
    }

    fn has_collision(f: &FunctionInstance) -> bool {
        (1..=f.size())
            .any(|x| ((x + 1)..=f.size()).any(|y| f.value(x).unwrap() == f.value(y).unwrap()))
    }

    fn has_triangle(g: &GraphInstance) -> bool {
        let n = g.node_count();
        for a in 1..=n {
            for b in (a + 1)..=n {
                if !g.has_edge(a, b).unwrap() {
                    continue;
                }
                for c in (b + 1)..=n {
                    if g.has_edge(a, c).unwrap() && g.has_edge(b, c).unwrap() {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn claw_reduction_examples() {
        let (f, g) = or_to_claw(&[false, false]).unwrap();
        assert!(!has_claw(&f, &g));

        let (f, g) = or_to_claw(&[false, true, false]).unwrap();
        assert_eq!(f.value(1).unwrap(), g.value(2).unwrap());

        let (f, g) = or_to_claw(&[true, true, true]).unwrap();
        assert_eq!((1..=3).filter(|&y| g.value(y).unwrap() == 1).count(), 3);
        assert!(has_claw(&f, &g));
    }

    #[test]
    fn ed_reduction_examples() {
        let f = or_to_ed(&[false, true, false]).unwrap();
        assert_eq!(f.values(), &[1, 0, 3, 0]);
        assert_eq!(f.value(2).unwrap(), f.value(4).unwrap());

        let f = or_to_ed(&[false, false]).unwrap();
        assert_eq!(f.values(), &[1, 2, 0]);
        assert!(!has_collision(&f));

        let f = or_to_ed(&[true, true]).unwrap();
        assert_eq!(f.values(), &[0, 0, 0]);
        assert!(has_collision(&f));
    }

    #[test]
    fn ordered_claw_reduction_examples() {
        let (f, g) = or_to_ordered_claw(&[false, true]).unwrap();
        assert_eq!(f.values(), &[3, 5]);
        assert_eq!(g.values(), &[2, 5]);
        assert_eq!(f.value(2).unwrap(), g.value(2).unwrap());

        let (f, g) = or_to_ordered_claw(&[false, false]).unwrap();
        assert_eq!(g.values(), &[2, 4]);
        assert!(!has_claw(&f, &g));

        let (f, g) = or_to_ordered_claw(&[true]).unwrap();
        assert_eq!(f.values(), g.values());
    }

    #[test]
    fn triangle_reduction_examples() {
        // Star only: no triangle.
        let g = or_to_triangle(3, &[false, false, false]).unwrap();
        assert!(!has_triangle(&g));
        assert_eq!(g.edge_count(), 3);

        // One base edge {1,2}: exactly the triangle {1,2,apex}.
        let g = or_to_triangle(3, &[true, false, false]).unwrap();
        assert!(has_triangle(&g));
        assert_eq!(g.edge_count(), 4);

        let slots = vec![true; 6];
        let g = or_to_triangle(4, &slots).unwrap();
        assert!(has_triangle(&g));
        assert_eq!(g.edge_count(), 6 + 4);
    }
}
