#include "lshsel/grid_index.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "detail/parallel.hpp"
#include "lshsel/analytic.hpp"

namespace lshsel::index {

namespace {

void validate_shape(int d, int domain_side) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (domain_side < 3) throw std::invalid_argument("domain side L must be >= 3");
  // Linearized cell keys need L^d to fit.
  double cells = std::pow(static_cast<double>(domain_side), d);
  if (cells > static_cast<double>(std::numeric_limits<std::int64_t>::max())) {
    throw std::invalid_argument("L^d too large for cell keys");
  }
}

double wrapped_delta(double x, double q, double side) {
  double delta = x - q;
  if (delta >= side / 2) delta -= side;
  if (delta < -side / 2) delta += side;
  return delta;
}

}  // namespace

PointDataset::PointDataset(int d, int domain_side, std::vector<double> coords)
    : d_(d), domain_side_(domain_side), coords_(std::move(coords)) {
  validate_shape(d, domain_side);
  if (coords_.size() % static_cast<std::size_t>(d) != 0) {
    throw std::invalid_argument("coordinate count must be a multiple of d");
  }
  if (size() > std::numeric_limits<PointId>::max()) throw std::invalid_argument("too many points");
  const double side = domain_side;
  for (double x : coords_) {
    if (!(x >= 0.0 && x < side)) throw std::invalid_argument("coordinates must lie in [0, L)");
  }
}

bool PointDataset::in_domain(std::span<const double> q) const {
  if (q.size() != static_cast<std::size_t>(d_)) return false;
  const double side = domain_side_;
  return std::all_of(q.begin(), q.end(), [&](double x) { return x >= 0.0 && x < side; });
}

PointDataset generate_dataset(std::size_t n, int d, int domain_side, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  validate_shape(d, domain_side);
  RandomStream rng(seed);
  std::vector<double> coords(n * static_cast<std::size_t>(d));
  for (double& x : coords) x = rng.uniform(0.0, domain_side);
  return PointDataset(d, domain_side, std::move(coords));
}

void write_dataset_csv(std::ostream& os, const PointDataset& dataset) {
  for (int j = 0; j < dataset.d(); ++j) os << (j ? "," : "") << "dim" << j;
  os << '\n';
  std::ostringstream line;
  line.precision(std::numeric_limits<double>::max_digits10);
  for (PointId id = 0; id < dataset.size(); ++id) {
    line.str("");
    const auto p = dataset.point(id);
    for (std::size_t j = 0; j < p.size(); ++j) line << (j ? "," : "") << p[j];
    os << line.str() << '\n';
  }
}

PointDataset read_dataset_csv(std::istream& is, int domain_side) {
  std::string header;
  if (!std::getline(is, header)) throw std::invalid_argument("dataset CSV is empty");
  int d = 0;
  {
    std::istringstream hs(header);
    std::string field;
    while (std::getline(hs, field, ',')) {
      if (!field.empty() && field.back() == '\r') field.pop_back();
      if (field != "dim" + std::to_string(d)) {
        throw std::invalid_argument("dataset CSV header must be dim0,...,dim{d-1}");
      }
      ++d;
    }
  }
  std::vector<double> coords;
  std::string line;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    std::istringstream ls(line);
    std::string field;
    int count = 0;
    while (std::getline(ls, field, ',')) {
      try {
        std::size_t used = 0;
        coords.push_back(std::stod(field, &used));
        if (field.find_first_not_of(" \r", used) != std::string::npos) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw std::invalid_argument("dataset CSV row " + std::to_string(row) + ": bad number '" + field + "'");
      }
      ++count;
    }
    if (count != d) {
      throw std::invalid_argument("dataset CSV row " + std::to_string(row) + " has " +
                                  std::to_string(count) + " fields, expected " + std::to_string(d));
    }
  }
  return PointDataset(d, domain_side, std::move(coords));
}

MultiGridIndex::MultiGridIndex(int d, int domain_side, std::vector<double> offsets, std::size_t m)
    : d_(d), domain_side_(domain_side), offsets_(std::move(offsets)), buckets_(m) {}

std::vector<int> MultiGridIndex::cell_coords(int grid, std::span<const double> x) const {
  std::vector<int> coords(static_cast<std::size_t>(d_));
  for (int j = 0; j < d_; ++j) {
    auto c = static_cast<int>(std::floor(x[static_cast<std::size_t>(j)] - offset(grid, j)));
    c %= domain_side_;
    if (c < 0) c += domain_side_;
    coords[static_cast<std::size_t>(j)] = c;
  }
  return coords;
}

MultiGridIndex::CellKey MultiGridIndex::cell_key(int grid, std::span<const double> x) const {
  CellKey key = 0;
  const auto side = static_cast<CellKey>(domain_side_);
  for (int j = d_ - 1; j >= 0; --j) {
    auto c = static_cast<int>(std::floor(x[static_cast<std::size_t>(j)] - offset(grid, j)));
    c %= domain_side_;
    if (c < 0) c += domain_side_;
    key = key * side + static_cast<CellKey>(c);
  }
  return key;
}

MultiGridIndex build_with_offsets(const PointDataset& dataset, int m, std::vector<double> offsets) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (offsets.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(dataset.d())) {
    throw std::invalid_argument("offsets must hold m * d entries");
  }
  for (double u : offsets) {
    if (!(u >= 0.0 && u < 1.0)) throw std::invalid_argument("grid offsets must lie in [0, 1)");
  }
  MultiGridIndex index(dataset.d(), dataset.domain_side(), std::move(offsets),
                       static_cast<std::size_t>(m));
  for (int g = 0; g < m; ++g) {
    auto& buckets = index.buckets_[static_cast<std::size_t>(g)];
    for (PointId id = 0; id < dataset.size(); ++id) {
      buckets[index.cell_key(g, dataset.point(id))].push_back(id);
    }
  }
  return index;
}

MultiGridIndex build(const PointDataset& dataset, int m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  RandomStream rng(seed);
  std::vector<double> offsets(static_cast<std::size_t>(m) * static_cast<std::size_t>(dataset.d()));
  for (double& u : offsets) u = rng.uniform();
  return build_with_offsets(dataset, m, std::move(offsets));
}

std::vector<PointId> query_candidates(const MultiGridIndex& index, std::span<const double> q) {
  const double side = index.domain_side();
  if (q.size() != static_cast<std::size_t>(index.d()) ||
      !std::all_of(q.begin(), q.end(), [&](double x) { return x >= 0.0 && x < side; })) {
    throw std::invalid_argument("query point must lie in [0, L)^d");
  }
  std::vector<PointId> out;
  for (int g = 0; g < index.m(); ++g) {
    const auto& buckets = index.buckets(g);
    if (auto it = buckets.find(index.cell_key(g, q)); it != buckets.end()) {
      out.insert(out.end(), it->second.begin(), it->second.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<PointId> range_query_exact(const PointDataset& dataset, std::span<const double> q,
                                       double s) {
  const double side = dataset.domain_side();
  if (!(s > 0.0 && s <= side / 2)) throw std::invalid_argument("query side s must be in (0, L/2]");
  if (q.size() != static_cast<std::size_t>(dataset.d())) {
    throw std::invalid_argument("query point has the wrong dimension");
  }
  std::vector<PointId> out;
  for (PointId id = 0; id < dataset.size(); ++id) {
    const auto x = dataset.point(id);
    bool inside = true;
    for (std::size_t j = 0; j < x.size() && inside; ++j) {
      inside = std::abs(wrapped_delta(x[j], q[j], side)) < s / 2;
    }
    if (inside) out.push_back(id);
  }
  return out;
}

double recall(std::span<const PointId> candidates, std::span<const PointId> exact) {
  if (exact.empty()) return 1.0;
  std::size_t found = 0;
  auto c = candidates.begin();
  for (PointId id : exact) {
    c = std::lower_bound(c, candidates.end(), id);
    if (c != candidates.end() && *c == id) ++found;
  }
  return static_cast<double>(found) / static_cast<double>(exact.size());
}

RecallReport recall_experiment(std::size_t n, int d, int domain_side, int m,
                               std::int64_t queries, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (queries < 1) throw std::invalid_argument("queries must be >= 1");
  const PointDataset dataset = generate_dataset(n, d, domain_side, seed);

  const auto count = static_cast<std::size_t>(queries);
  std::vector<double> recalls(count);
  std::vector<double> fractions(count);
  std::vector<std::int64_t> redraws(count, 0);
  constexpr std::int64_t kMaxRedraws = 1'000'000;

  detail::parallel_for(count, [&](std::size_t k) {
    RandomStream rng = RandomStream::substream(seed, k + 1);
    std::vector<double> offsets(static_cast<std::size_t>(m) * static_cast<std::size_t>(d));
    for (double& u : offsets) u = rng.uniform();
    std::vector<double> q(static_cast<std::size_t>(d));
    std::vector<PointId> exact;
    while (true) {
      for (double& x : q) x = rng.uniform(0.0, domain_side);
      exact = range_query_exact(dataset, q, 1.0);
      if (!exact.empty()) break;
      if (++redraws[k] > kMaxRedraws) throw std::runtime_error("range queries keep coming back empty");
    }
    const MultiGridIndex index = build_with_offsets(dataset, m, std::move(offsets));
    const std::vector<PointId> candidates = query_candidates(index, q);
    recalls[k] = recall(candidates, exact);
    fractions[k] = static_cast<double>(candidates.size()) / static_cast<double>(dataset.size());
  });

  const detail::MeanAndError me = detail::mean_and_error(recalls);
  RecallReport r;
  r.queries = queries;
  r.mean_recall = me.mean;
  r.std_error = me.std_error;
  r.predicted = analytic::p_at_least_one(m, d);
  r.mean_candidate_fraction = detail::pairwise_sum(fractions) / static_cast<double>(count);
  for (std::int64_t c : redraws) r.redraws += c;
  return r;
}

}  // namespace lshsel::index
