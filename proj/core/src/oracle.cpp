#include "noisycluster/oracle.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "noisycluster/errors.hpp"
#include "noisycluster/pair_rng.hpp"

namespace noisycluster {

namespace {

std::uint64_t pair_key(int u, int v) {
  const std::uint64_t lo = static_cast<std::uint64_t>(std::min(u, v));
  const std::uint64_t hi = static_cast<std::uint64_t>(std::max(u, v));
  return (lo << 32) | hi;
}

}  // namespace

Oracle::Oracle(Clustering truth, double p, double q, std::uint64_t seed)
    : n_(truth.n()), truth_(std::move(truth)), p_(p), q_(q), seed_(seed) {
  if (!(p >= 0.0 && p < 0.5))
    throw InvalidErrorRate("oracle: p must lie in [0, 0.5)");
  if (!(q >= 0.0 && q < 0.5))
    throw InvalidErrorRate("oracle: q must lie in [0, 0.5)");
}

Oracle Oracle::replay(
    int n, const std::vector<std::pair<std::pair<int, int>, int>>& answers) {
  Oracle o;
  o.n_ = n;
  for (const auto& [pair, answer] : answers) {
    const auto [u, v] = pair;
    if (u == v) throw SelfQuery("replay: self pair");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InvalidInput("replay: element out of range");
    if (answer != 1 && answer != -1)
      throw InvalidInput("replay: answer must be +1 or -1");
    o.cache_[pair_key(u, v)] = Entry{static_cast<std::int8_t>(answer), false};
  }
  return o;
}

int Oracle::query(int u, int v) {
  if (u == v) throw SelfQuery("oracle: query(v, v)");
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw InvalidInput("oracle: element out of range");
  ++stats_.total_calls;

  const std::uint64_t key = pair_key(u, v);
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    if (!truth_.has_value())
      throw InvalidInput("oracle replay: pair not present in dump");
    const double r = pair_uniform(seed_, u, v);
    std::int8_t answer;
    if (truth_->same_cluster(u, v)) {
      answer = (r < p_) ? -1 : 1;
    } else {
      answer = (r < q_) ? 1 : -1;
    }
    it = cache_.emplace(key, Entry{answer, false}).first;
  }
  if (!it->second.touched) {
    it->second.touched = true;
    ++stats_.distinct_pairs;
  }
  return it->second.answer;
}

void Oracle::dump_answers(std::ostream& out) const {
  std::vector<std::pair<std::uint64_t, int>> rows;
  rows.reserve(cache_.size());
  for (const auto& [key, entry] : cache_) rows.emplace_back(key, entry.answer);
  std::sort(rows.begin(), rows.end());
  out << "u,v,answer\n";
  for (const auto& [key, answer] : rows) {
    out << (key >> 32) << ',' << (key & 0xffffffffULL) << ',' << answer << '\n';
  }
}

Oracle Oracle::replay_from_csv(int n, std::istream& in) {
  std::vector<std::pair<std::pair<int, int>, int>> answers;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && line.rfind("u,", 0) == 0) {  // header
      first = false;
      continue;
    }
    first = false;
    std::istringstream row(line);
    int u = 0, v = 0, a = 0;
    char comma = 0;
    if (!(row >> u >> comma >> v >> comma >> a))
      throw InvalidInput("replay csv: malformed row: " + line);
    answers.push_back({{u, v}, a});
  }
  return replay(n, answers);
}

}  // namespace noisycluster
