/// All integer pairs (a, b) with a² + b² = n, in lexicographic order.
pub fn circle_lattice_points(n: u64) -> Vec<(i64, i64)> {
    let root = n.isqrt() as i64;
    let mut out = Vec::new();
    for a in -root..=root {
        let rest = n - (a * a) as u64;
        let b = rest.isqrt();
        if b * b == rest {
            let b = b as i64;
            if b == 0 {
                out.push((a, 0));
            } else {
                out.push((a, -b));
                out.push((a, b));
            }
        }
    }
    out
}

/// All integer triples (a, b, c) with a² + b² + c² = n, in lexicographic
/// order.
pub fn sphere_lattice_points(n: u64) -> Vec<[i64; 3]> {
    let root = n.isqrt() as i64;
    let mut out = Vec::new();
    for a in -root..=root {
        let rest = n - (a * a) as u64;
        out.extend(
            circle_lattice_points(rest)
                .into_iter()
                .map(|(b, c)| [a, b, c]),
        );
    }
    out
}

/// Number of representations of `n` as a sum of two squares.
pub fn r2(n: u64) -> usize {
    circle_lattice_points(n).len()
}

/// Number of representations of `n` as a sum of three squares.
pub fn r3(n: u64) -> usize {
    sphere_lattice_points(n).len()
}
