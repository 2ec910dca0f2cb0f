#pragma once

#include <string>
#include <vector>

namespace qgaa {

/// One logged training iteration. QAE training fills iter/loss only; the
/// adversarial loop fills every column.
struct TrainStep {
  int iter = 0;
  double loss = 0.0;
  double p_real = 0.0;
  double p_fake = 0.0;
  double mean_fidelity = 0.0;
  double lr_g = 0.0;
  double lr_d = 0.0;
};

struct TrainRecord {
  std::vector<TrainStep> steps;

  /// CSV with header iter,loss,p_real,p_fake,mean_fidelity,lr_g,lr_d
  std::string to_csv() const;
};

}  // namespace qgaa
