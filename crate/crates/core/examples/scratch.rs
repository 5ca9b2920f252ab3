use sslab_core::algebra::field::FieldCtx;
use sslab_core::hasse::{orbit_statistics, HassePoly, IterKind, SweepOptions};
use sslab_core::nt;

fn row(lo: u64, hi: u64) {
    let mut f1 = (f64::MAX, f64::MIN);
    let mut f2 = (f64::MAX, f64::MIN);
    let mut f3 = (f64::MAX, f64::MIN);
    let mut count = 0;
    for p in nt::primes_in(lo, hi) {
        if p % 4 != 3 { continue; }
        let h = HassePoly::new(FieldCtx::new(p).unwrap());
        let s = orbit_statistics(&h, IterKind::PlainP, &SweepOptions::default()).unwrap();
        f1 = (f1.0.min(s.f1), f1.1.max(s.f1));
        f2 = (f2.0.min(s.f2), f2.1.max(s.f2));
        f3 = (f3.0.min(s.f3), f3.1.max(s.f3));
        count += 1;
    }
    println!("[{lo},{hi}] n={count}: F1=({:.4},{:.4}) F2=({:.4},{:.4}) F3=({:.4},{:.4})", f1.0, f1.1, f2.0, f2.1, f3.0, f3.1);
}

fn main() {
    let t0 = std::time::Instant::now();
    row(100, 2000);
    println!("row1 took {:?}", t0.elapsed());
    row(2000, 3000);
}
