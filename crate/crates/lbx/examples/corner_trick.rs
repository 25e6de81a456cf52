//! Stabbing as dominance counting and as 4d emptiness: the four signed
//! corners of a rectangle make inclusion–exclusion count exact stabs, and
//! lifting rectangles to 4d points turns the same question into a box
//! emptiness query.

use lbx::geo::{lift_query, points_to_text, stabbing_to_counting, stabbing_to_reporting4d};
use lbx::problems::{dominance_count2d, report4d_nonempty, stab2d, Rect2D};

fn main() -> lbx::Result<()> {
    let rects = vec![Rect2D::new(1, 4, 2, 5)?, Rect2D::new(3, 6, 0, 3)?];

    // Each rectangle contributes +1 at its low corner and canceling
    // corners past its high edges.
    let points = stabbing_to_counting(&rects)?;
    println!("signed corners:\n{}", points_to_text(&points));

    // Dominance counting reproduces the exact stab count everywhere.
    for q in [(3, 2), (0, 0), (4, 3), (6, 6), (5, 1)] {
        let exact = stab2d(&rects, q);
        let counted = dominance_count2d(&points, q);
        assert_eq!(counted, exact.count as i64);
        println!("query {q:?}: {counted} rectangle(s) contain it");
    }

    // The 4d lift: a rectangle becomes the point (x_lo, x_hi, y_lo, y_hi)
    // and a query becomes a box that catches exactly the containing
    // rectangles.
    let lifted = stabbing_to_reporting4d(&rects);
    for q in [(3, 2), (0, 0), (5, 1)] {
        let stabbed = report4d_nonempty(&lifted, &lift_query(q));
        assert_eq!(stabbed, stab2d(&rects, q).stabbed);
        println!("query {q:?}: 4d box nonempty = {stabbed}");
    }

    // Weights cancel: far outside everything the running count is zero,
    // even past high corners.
    assert_eq!(dominance_count2d(&points, (u64::MAX - 1, u64::MAX - 1)), 0);
    println!("all corner weights cancel at infinity");
    Ok(())
}
