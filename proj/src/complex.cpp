#include "chiral/complex.hpp"

#include <map>

#include "chiral/error.hpp"
#include "chiral/parallel.hpp"

namespace chiral {

std::vector<SparseVec> carrier_basis(const Carrier& carrier, const BlockSpace& block) {
  std::vector<SparseVec> basis;
  int weight = 0;
  if (block.dim() > 0) weight = grade_of(block.model(), block.basis()[0]).weight;
  std::vector<OpExpr> ops;
  if (carrier.constraints) ops = carrier.constraints(weight);
  if (ops.empty()) {
    for (std::size_t i = 0; i < block.dim(); ++i) basis.push_back(SparseVec{{static_cast<int>(i), Scalar(1)}});
    return basis;
  }
  // Rows of the stacked constraint matrix, indexed by output coordinates.
  DynamicIndex out;
  std::map<int, SparseVec> rows;
  for (std::size_t op = 0; op < ops.size(); ++op) {
    std::map<int, SparseVec> local;
    DynamicIndex idx;
    for (std::size_t col = 0; col < block.dim(); ++col) {
      State img = ops[op](block.element(col));
      for (const auto& [r, v] : idx.coordinates(img)) local[r][static_cast<int>(col)] = v;
    }
    int base = static_cast<int>(rows.size());
    for (auto& [r, row] : local) rows.emplace(base + r, std::move(row));
  }
  std::vector<SparseVec> rv;
  rv.reserve(rows.size());
  for (auto& [r, row] : rows) rv.push_back(std::move(row));
  return nullspace(rv, static_cast<int>(block.dim()));
}

BlockSpace make_block(const GradedComplex& c, const BlockKey& key) {
  int lo = c.exact_poly_degree ? key.poly_degree : 0;
  return BlockSpace(*c.model, enumerate_block(*c.model, c.carrier.sector, key.weight, key.degree, lo,
                                              key.poly_degree));
}

namespace {

struct DegreeData {
  std::size_t block_dim = 0;
  std::size_t carrier_dim = 0;
  std::size_t rank = 0;
};

DegreeData analyse(const GradedComplex& c, const BlockKey& key) {
  BlockSpace block = make_block(c, key);
  auto carrier = carrier_basis(c.carrier, block);
  BlockKey next = key;
  next.degree += 1;
  BlockSpace target = make_block(c, next);
  EchelonBasis image;
  for (const auto& v : carrier) {
    State dv = c.d(block.combination(v));
    SparseVec coords;
    if (auto stray = target.coordinates(dv, coords))
      throw Error("differential leaves block (w=" + std::to_string(key.weight) + ", deg=" +
                  std::to_string(key.degree + 1) + ", pd=" + std::to_string(key.poly_degree) +
                  "): " + word_str(*c.model, stray->word) + " " + monomial_str(stray->exps));
    image.insert(coords);
  }
  return {block.dim(), carrier.size(), image.rank()};
}

}  // namespace

std::vector<CohomologyEntry> graded_cohomology(const GradedComplex& c, int jobs) {
  std::vector<BlockKey> keys;
  std::vector<int> pds;
  if (c.exact_poly_degree) {
    for (int p = 0; p <= c.max_poly_degree; ++p) pds.push_back(p);
  } else {
    pds.push_back(c.max_poly_degree);
  }
  for (int w = 0; w <= c.max_weight; ++w)
    for (int p : pds)
      for (int d = c.min_degree - 1; d <= c.max_degree; ++d) keys.push_back({w, d, p});
  std::vector<DegreeData> data(keys.size());
  parallel_for(keys.size(), jobs, [&](std::size_t i) { data[i] = analyse(c, keys[i]); });
  std::map<BlockKey, DegreeData> by_key;
  for (std::size_t i = 0; i < keys.size(); ++i) by_key[keys[i]] = data[i];
  std::vector<CohomologyEntry> out;
  for (const auto& k : keys) {
    if (k.degree < c.min_degree) continue;
    BlockKey prev = k;
    prev.degree -= 1;
    const DegreeData& cur = by_key[k];
    const DegreeData& pre = by_key[prev];
    CohomologyEntry e;
    e.key = k;
    e.block_dim = cur.block_dim;
    e.carrier_dim = cur.carrier_dim;
    e.rank_out = cur.rank;
    e.dimension = cur.carrier_dim - cur.rank - pre.rank;
    out.push_back(e);
  }
  return out;
}

}  // namespace chiral
