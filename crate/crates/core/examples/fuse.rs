//! Two sensors report on tonight's temperature; their evidence is fused and
//! a fuzzy query ("around 20–21 degrees") is bracketed by belief and
//! plausibility.

use fuzzy_evidence::{belief, combine, Bpa, Frame, FuzzySet};

fn main() -> fuzzy_evidence::Result<()> {
    let frame = Frame::new(["18", "19", "20", "21", "22"])?;

    let warm = FuzzySet::from_grades(
        frame.clone(),
        &[("19", 0.5), ("20", 1.0), ("21", 1.0), ("22", 0.5)],
    )?;
    let hot = FuzzySet::from_grades(frame.clone(), &[("21", 0.6), ("22", 1.0)])?;

    // Sensor 1 mostly says "warm", sensor 2 insists on "hot".
    let m1 = Bpa::new(frame.clone(), vec![(warm, 0.7), (hot.clone(), 0.3)])?;
    let m2 = Bpa::single(hot)?;

    let query = FuzzySet::from_grades(frame.clone(), &[("20", 1.0), ("21", 0.8)])?;
    let before = belief::interval(&m1, &query)?;
    println!("sensor 1 alone:   [{:.3}, {:.3}]", before.bel, before.pls);

    let fused = combine::combine(&m1, &m2)?;
    let after = belief::interval(&fused.result, &query)?;
    println!("after fusion:     [{:.3}, {:.3}]", after.bel, after.pls);
    println!("conflict mass K:  {:.3}", fused.conflict_mass);
    Ok(())
}
