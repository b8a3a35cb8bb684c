#pragma once

#include "torsym/linalg.hpp"
#include "torsym/models.hpp"

namespace torsym {

/// Full 2d x 2d Fisher information of the sine-skewed location-skewness
/// model at lambda = 0, ordered (mu_1..mu_d, lambda_1..lambda_d):
///
///   I_{mu_j mu_k}      = int phi_j phi_k f0
///   I_{lambda_j lambda_k} = int sin t_j sin t_k f0
///   I_{mu_j lambda_j}  = int phi_j sin t_j f0,   I_{mu_j lambda_k} = 0 (j != k)
///
/// Integrals by periodic_integrate_many with the default node counts.
Matrix fisher_info(const BaseModel& model);

/// Lower-right d x d block (the skewness information Gamma_{f0;lambda}).
Matrix lambda_block(const Matrix& full_info);

}  // namespace torsym
