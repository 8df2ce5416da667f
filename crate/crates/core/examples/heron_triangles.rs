//! Rational triangles of area T from the curve C_T, and envelopes built from
//! triangles with the right Heron area.

use theta_envelope::envelopes::envelope_from_triangle;
use theta_envelope::theta_curves::make_e_t;
use theta_envelope::transforms::{et_to_ct, triangle_from_ct_point, CtPoint};
use theta_envelope::{int, Angle, CurvePoint};

fn main() -> theta_envelope::Result<()> {
    let t = int(6);
    let curve = make_e_t(&t)?;
    let t2 = &t * &t;
    let q1 = CurvePoint::affine(&t2 / int(4), &t * (&t2 - int(8)) / int(8));
    for k in 1..=4 {
        let q = curve.scalar_mul(k, &q1)?;
        if let CtPoint::Affine { x, y } = et_to_ct(&t, &q)? {
            let tri = triangle_from_ct_point(&t, &x, &y)?;
            println!("[{k}]Q1: sides {:?}, area {}", tri.sides().clone().map(|s| s.to_string()), tri.area().unwrap());
        }
    }
    // At cos = 3/5 the sine is 4/5, so n = 3 needs area 2 * 3 * 4 = 24.
    let angle = Angle::new(5, 3)?;
    let env = envelope_from_triangle(&angle, 3, &[int(6), int(8), int(10)])?;
    println!("from (6, 8, 10): {env}, verifies for 3: {}", env.verify(3));
    Ok(())
}
