//! The bijection between λ-spirallike and starlike functions,
//! `log(f/z) = e^{iλ} cos λ · log(g/z)`.
//!
//! It acts on function handles only; image domains are not transformed.

use crate::error::{Error, Result};
use crate::geometry::SpiralAngle;
use crate::representation::SpiralFunction;

/// The λ-spirallike partner of a starlike `g`.
pub fn spirallike_of(g: &SpiralFunction, angle: SpiralAngle) -> Result<SpiralFunction> {
    if !g.is_starlike_certified() {
        return Err(Error::parameter(
            "spirallike_of expects a starlike function (built at λ = 0 or from the gallery)",
        ));
    }
    Ok(g.rescaled(angle, g.scale() * angle.mu(), angle.is_starlike()))
}

/// The starlike partner of a λ-spirallike `f` built for `angle`.
pub fn starlike_of(f: &SpiralFunction, angle: SpiralAngle) -> Result<SpiralFunction> {
    if f.angle() != angle {
        return Err(Error::parameter(format!(
            "function was built for λ = {}, not {}",
            f.angle().lambda(),
            angle.lambda()
        )));
    }
    Ok(f.rescaled(SpiralAngle::STARLIKE, f.scale() / angle.mu(), true))
}
