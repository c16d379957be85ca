//! Polygon booleans, minimum-area bounding rectangle, opening and the
//! largest inscribed activity shape on a small L-shaped region.

use mss::geometry::{
    largest_inscribed_shape_with, min_area_bounding_rect, simplify_region, ActivityTemplate, InscribeOptions, Region,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l_shape = Region::polygon(&[(0.0, 0.0), (4.0, 0.0), (4.0, 1.5), (1.5, 1.5), (1.5, 3.0), (0.0, 3.0)])?;
    let probe = Region::rect(1.0, 1.0, 3.0, 2.0);
    println!("L-shape area          {:.4} m²", l_shape.area());
    println!("∩ probe               {:.4} m²", l_shape.intersection(&probe).area());
    println!("∪ probe               {:.4} m²", l_shape.union(&probe).area());
    println!("∖ probe               {:.4} m²", l_shape.difference(&probe).area());

    let mabr = min_area_bounding_rect(&l_shape)?;
    println!(
        "bounding rectangle    {:.3} × {:.3} m at θ = {:.1}°",
        mabr.sx,
        mabr.sy,
        mabr.transform.theta.to_degrees()
    );

    // A 0.1 m wide spike disappears under an opening of radius 0.1 m.
    let spiked = l_shape.union(&Region::rect(4.0, 0.5, 5.0, 0.6));
    let opened = simplify_region(&spiked, 0.1);
    println!("with spike {:.4} m², opened {:.4} m²", spiked.area(), opened.area());

    let fit = largest_inscribed_shape_with(&ActivityTemplate::square(), &l_shape, &InscribeOptions::default())?;
    println!(
        "square template fit   {:.4} m² (scaled {:.3} × {:.3} m)",
        fit.shape.area(),
        fit.placement.sx,
        fit.placement.sy
    );
    Ok(())
}
