#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "planvec/raster.hpp"

namespace planvec::raster {

HoughAccumulator hough_accumulate(const BinaryMask& edges, double theta_res_deg,
                                  double rho_res_px) {
  if (!(theta_res_deg > 0.0) || !(rho_res_px > 0.0)) {
    throw std::invalid_argument("hough resolutions must be positive");
  }
  HoughAccumulator acc;
  acc.theta_res_deg = theta_res_deg;
  acc.rho_res_px = rho_res_px;
  acc.theta_bins = std::max(1, static_cast<int>(std::ceil(180.0 / theta_res_deg - 1e-9)));
  const double diag = std::hypot(static_cast<double>(edges.width()), static_cast<double>(edges.height()));
  acc.rho_offset = static_cast<int>(std::ceil(diag / rho_res_px));
  acc.rho_bins = 2 * acc.rho_offset + 1;
  acc.votes.assign(static_cast<std::size_t>(acc.theta_bins) * acc.rho_bins, 0);

  std::vector<double> cs(acc.theta_bins), sn(acc.theta_bins);
  for (int t = 0; t < acc.theta_bins; ++t) {
    const double rad = acc.theta_deg(t) * 3.14159265358979323846 / 180.0;
    cs[t] = std::cos(rad);
    sn[t] = std::sin(rad);
  }
  for (int y = 0; y < edges.height(); ++y) {
    for (int x = 0; x < edges.width(); ++x) {
      if (!edges.at(x, y)) continue;
      for (int t = 0; t < acc.theta_bins; ++t) {
        const double rho = x * cs[t] + y * sn[t];
        const int r = static_cast<int>(std::lround(rho / rho_res_px)) + acc.rho_offset;
        if (r >= 0 && r < acc.rho_bins) ++acc.votes[static_cast<std::size_t>(t) * acc.rho_bins + r];
      }
    }
  }
  return acc;
}

namespace {

// Strictly above neighbours that come earlier in (theta, rho) order and at
// least equal to later ones, so a plateau yields exactly one maximum.
bool is_local_max(const HoughAccumulator& acc, int t, int r) {
  const int v = acc.at(t, r);
  for (int dt = -1; dt <= 1; ++dt) {
    for (int dr = -1; dr <= 1; ++dr) {
      if (dt == 0 && dr == 0) continue;
      const int nt = t + dt, nr = r + dr;
      if (nt < 0 || nr < 0 || nt >= acc.theta_bins || nr >= acc.rho_bins) continue;
      const int nv = acc.at(nt, nr);
      const bool earlier = dt < 0 || (dt == 0 && dr < 0);
      if (earlier ? nv >= v : nv > v) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<HoughPeak> hough_peaks(const BinaryMask& edges, double theta_res_deg,
                                   double rho_res_px, int min_votes, PeakMode mode) {
  const HoughAccumulator acc = hough_accumulate(edges, theta_res_deg, rho_res_px);
  const int floor_votes = std::max(min_votes, 1);
  std::vector<HoughPeak> peaks;
  for (int t = 0; t < acc.theta_bins; ++t) {
    for (int r = 0; r < acc.rho_bins; ++r) {
      const int v = acc.at(t, r);
      if (v < floor_votes) continue;
      if (mode == PeakMode::local_maxima && !is_local_max(acc, t, r)) continue;
      peaks.push_back({acc.theta_deg(t), acc.rho_px(r), v});
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(), [](const HoughPeak& a, const HoughPeak& b) {
    return a.votes > b.votes;
  });
  return peaks;
}

}  // namespace planvec::raster
