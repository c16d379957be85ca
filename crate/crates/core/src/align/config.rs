use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::AlignError;
use crate::scene::FunctionClass;

/// Evolutionary search settings. Defaults: population 100, 80
/// generations, mutation probability 10 %, mutation rate 50 %, crossover
/// rate 80 %, 0.1 m translation steps, 15° rotation steps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlignmentConfig {
    pub population: usize,
    pub generations: usize,
    /// Chance that an offspring is mutated at all.
    pub mutation_probability: f64,
    /// Fraction of a mutated offspring's genes that are resampled.
    pub mutation_rate: f64,
    pub crossover_rate: f64,
    pub translation_step: f64,
    /// Radians.
    pub rotation_step: f64,
    pub seed: u64,
    /// Maximum centroid offset per axis in meters; `None` derives it from
    /// the rooms' bounding boxes.
    pub translation_bounds: Option<f64>,
}

impl Default for AlignmentConfig {
    fn default() -> Self {
        Self {
            population: 100,
            generations: 80,
            mutation_probability: 0.10,
            mutation_rate: 0.50,
            crossover_rate: 0.80,
            translation_step: 0.10,
            rotation_step: 15f64.to_radians(),
            seed: 0,
            translation_bounds: None,
        }
    }
}

impl AlignmentConfig {
    pub fn validate(&self) -> Result<(), AlignError> {
        let frac = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(AlignError::InvalidConfig(format!("{name} must lie in [0, 1], got {v}")))
            }
        };
        frac("mutation_probability", self.mutation_probability)?;
        frac("mutation_rate", self.mutation_rate)?;
        frac("crossover_rate", self.crossover_rate)?;
        if self.population < 2 {
            return Err(AlignError::InvalidConfig("population must be at least 2".into()));
        }
        if !(self.translation_step > 0.0 && self.translation_step.is_finite()) {
            return Err(AlignError::InvalidConfig("translation_step must be positive".into()));
        }
        if !(self.rotation_step > 0.0 && self.rotation_step.is_finite()) {
            return Err(AlignError::InvalidConfig("rotation_step must be positive".into()));
        }
        if let Some(b) = self.translation_bounds {
            if !(b >= 0.0 && b.is_finite()) {
                return Err(AlignError::InvalidConfig("translation_bounds must be non-negative".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Maximize { weight: f64 },
    Constraint { min_area: f64 },
    Ignore,
}

/// What to maximize and what to require, per function class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectiveSpec {
    pub roles: BTreeMap<FunctionClass, Role>,
    /// Collapse all maximize entries into one weighted sum instead of a
    /// Pareto front.
    #[serde(default)]
    pub weighted_sum: bool,
}

impl Default for ObjectiveSpec {
    /// Maximize mutual walkable space.
    fn default() -> Self {
        Self::maximize(FunctionClass::Walkable)
    }
}

impl ObjectiveSpec {
    /// Maximize one class with unit weight, ignore the rest.
    pub fn maximize(class: FunctionClass) -> Self {
        Self {
            roles: BTreeMap::from([(class, Role::Maximize { weight: 1.0 })]),
            weighted_sum: false,
        }
    }

    pub fn with_maximize(mut self, class: FunctionClass, weight: f64) -> Self {
        self.roles.insert(class, Role::Maximize { weight });
        self
    }

    pub fn with_constraint(mut self, class: FunctionClass, min_area: f64) -> Self {
        self.roles.insert(class, Role::Constraint { min_area });
        self
    }

    pub fn role(&self, class: FunctionClass) -> Role {
        self.roles.get(&class).copied().unwrap_or(Role::Ignore)
    }

    pub fn validate(&self) -> Result<(), AlignError> {
        let mut maximized = 0;
        for (class, role) in &self.roles {
            match *role {
                Role::Maximize { weight } => {
                    if !(weight > 0.0 && weight.is_finite()) {
                        return Err(AlignError::InvalidObjective(format!("weight for {class} must be positive")));
                    }
                    maximized += 1;
                }
                Role::Constraint { min_area } => {
                    if !(min_area >= 0.0 && min_area.is_finite()) {
                        return Err(AlignError::InvalidObjective(format!("minimum area for {class} must be non-negative")));
                    }
                }
                Role::Ignore => {}
            }
        }
        if maximized == 0 {
            return Err(AlignError::InvalidObjective("at least one class must be maximized".into()));
        }
        Ok(())
    }

    /// Classes whose mutual area is computed, in class order.
    pub fn evaluated_classes(&self) -> Vec<FunctionClass> {
        FunctionClass::ALL.into_iter().filter(|c| self.role(*c) != Role::Ignore).collect()
    }

    /// Maximized classes with their weights, in class order.
    pub fn maximized(&self) -> Vec<(FunctionClass, f64)> {
        FunctionClass::ALL
            .into_iter()
            .filter_map(|c| match self.role(c) {
                Role::Maximize { weight } => Some((c, weight)),
                _ => None,
            })
            .collect()
    }

    pub fn constraints(&self) -> Vec<(FunctionClass, f64)> {
        FunctionClass::ALL
            .into_iter()
            .filter_map(|c| match self.role(c) {
                Role::Constraint { min_area } => Some((c, min_area)),
                _ => None,
            })
            .collect()
    }

    /// Number of objective dimensions the search sees.
    pub fn dimensions(&self) -> usize {
        if self.weighted_sum {
            1
        } else {
            self.maximized().len()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        AlignmentConfig::default().validate().unwrap();
        let bad = AlignmentConfig {
            mutation_rate: 1.5,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn objective_needs_a_maximize_entry() {
        let only_constraint = ObjectiveSpec {
            roles: BTreeMap::from([(FunctionClass::Sittable, Role::Constraint { min_area: 1.0 })]),
            weighted_sum: false,
        };
        assert!(only_constraint.validate().is_err());
        let ok = ObjectiveSpec::maximize(FunctionClass::Walkable).with_constraint(FunctionClass::Sittable, 1.0);
        ok.validate().unwrap();
        assert_eq!(ok.evaluated_classes(), vec![FunctionClass::Walkable, FunctionClass::Sittable]);
        assert_eq!(ok.dimensions(), 1);
        assert!(ObjectiveSpec::maximize(FunctionClass::Walkable).with_maximize(FunctionClass::Walkable, 0.0).validate().is_err());
    }
}
