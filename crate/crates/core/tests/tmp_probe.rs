use std::time::Instant;
use summa_core::convexdual::*;
use summa_core::simonslab::*;
#[test]
fn probe() {
    let disk = DualBody::ball(1.0, 2).unwrap();
    let b = GeneratingSet::sphere_sample(10_000, 7, None);
    let t = Instant::now();
    let pts = b.points_within(&disk).unwrap();
    println!("points {:?} {}", t.elapsed(), pts.len());
    let t = Instant::now();
    let g = i_generates(&b, &disk, 1e-2, 0).unwrap();
    println!("gen {:?} {}", t.elapsed(), g.generates);
    let t = Instant::now();
    let g = is_boundary(&b, &disk, 1000, 0).unwrap();
    println!("bdry {:?} {}", t.elapsed(), g.is_boundary);
    let mut rng = summa_core::sampling::SampleRng::new(1);
    let xs = random_vector_sequence(&mut rng, 2, 8);
    let t = Instant::now();
    let r = check_simons(&disk, &b, &xs, &LabOptions::default()).unwrap();
    println!("simons {:?} {}", t.elapsed(), r.satisfied);
}
