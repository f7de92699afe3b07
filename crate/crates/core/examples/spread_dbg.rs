use levypde::*;
fn main() {
    let grid = TorusGrid::new(1, 1.0, 128).unwrap();
    let m = LevyMeasure::stable(1.0, 1).unwrap();
    let table = compute_symbol(&m, &grid).unwrap();
    let p = build_partition(2.0, &grid).unwrap();
    let corpus = levypde::corpus::standard_corpus(&grid, 7);
    let rep = levypde::fracops::equiv_frac_norms(&corpus, &m, &table, &p, 0.5, 1.0).unwrap();
    for (name, a, b, c) in &rep.rows {
        let hi = a.max(*b).max(*c);
        let lo = a.min(*b).min(*c);
        println!("{name:24} a={a:10.4} b={b:10.4} c={c:10.4} spread={:.3}", hi/lo);
    }
}
