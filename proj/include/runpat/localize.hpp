#ifndef RUNPAT_LOCALIZE_HPP
#define RUNPAT_LOCALIZE_HPP

#include <vector>

#include "runpat/chart.hpp"

namespace runpat {

// One scan window I_j = {start,...,end}, end = start + r - 1 (1-based).
// p_value = P(S_n(r) >= count | N1 = n1); center is the anomaly-location
// proxy.  Reports are ordered by count descending, ties by earlier start.
struct WindowReport {
  int start = 0;
  int end = 0;
  int count = 0;
  double p_value = 1.0;
  int center = 0;
};

// One maximal run of 1s; p_value = P(L_n >= length | N1 = n1).
struct RunReport {
  int start = 0;
  int end = 0;
  int length = 0;
  double p_value = 1.0;
};

std::vector<WindowReport> topk_windows(const BinarySequence& seq, int r, int k,
                                       ScanSource& source);

std::vector<RunReport> longest_runs(const BinarySequence& seq, int k,
                                    ScanSource& source);

}  // namespace runpat

#endif  // RUNPAT_LOCALIZE_HPP
