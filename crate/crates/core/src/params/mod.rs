//! Graph parameters: independence and clique numbers, fractional clique
//! cover, Lovász theta, rank certificates, bundled values and the spectral
//! point interface.

mod cliques;
mod fixtures;
mod fractional;
mod haemers;
mod johnson;
mod named;
mod spectral;
mod theta;
mod value;

pub use cliques::{
    chromatic_number, clique_cover_number, clique_number, independence_number, maximal_cliques,
    maximal_independent_sets, maximum_clique, maximum_independent_set, ALPHA_GUARD,
    CHROMATIC_GUARD, ENUMERATION_GUARD,
};
pub use fixtures::{fixture, fixtures, Fixture, FixtureRecord};
pub use fractional::{fractional_clique_cover, fractional_clique_cover_lp, CliqueCoverLp};
pub use haemers::haemers_rank_certificate;
pub use johnson::{johnson_type_graph, theta_johnson_scheme};
pub use named::named_graph;
pub use spectral::{
    spectral_point, FractionalCliqueCover, HaemersF2, IndependenceNumber, SpectralPoint, Theta,
};
pub use theta::{lovasz_theta, theta_sdp, ThetaSolution, THETA_GUARD, THETA_TOL};
pub use value::{ParamValue, COMPARE_SLACK};

use crate::error::{Error, Result};
use crate::graph::{strong_power, Graph};

/// `α(G^{⊠n})^{1/n}`, a lower bound on the Shannon capacity.
pub fn shannon_capacity_lower(g: &Graph, n: u32) -> Result<ParamValue> {
    if n == 0 {
        return Err(Error::Domain("power must be at least 1".into()));
    }
    let size = (g.order() as u128).checked_pow(n).unwrap_or(u128::MAX);
    if size > ALPHA_GUARD as u128 {
        return Err(Error::SizeGuard {
            what: "strong power for capacity bound",
            size: size.min(usize::MAX as u128) as usize,
            limit: ALPHA_GUARD,
        });
    }
    let alpha = independence_number(&strong_power(g, n as usize))?;
    ParamValue::integer(alpha as i64).root(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capacity_lower_bounds() {
        let c5 = Graph::cycle(5);
        assert_eq!(shannon_capacity_lower(&c5, 1).unwrap(), ParamValue::integer(2));
        assert_eq!(shannon_capacity_lower(&c5, 2).unwrap().to_string(), "sqrt(5)");
        assert_eq!(shannon_capacity_lower(&Graph::complete(3), 3).unwrap(), ParamValue::integer(1));
        assert!(shannon_capacity_lower(&c5, 4).is_err());
    }
}
