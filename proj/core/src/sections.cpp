#include "apolar/sections.hpp"

#include <algorithm>
#include <numeric>

namespace apolar {

long CompleteIntersection::degree() const {
  long d = 1;
  for (const auto& g : generators) d *= g.degree();
  return d;
}

int CompleteIntersection::socle_degree() const {
  int s = 0;
  for (const auto& g : generators) s += g.degree() - 1;
  return s;
}

void CompleteIntersection::validate() const {
  if (ambient_dim < 1) throw InvalidArgument("ambient dimension must be positive");
  if (generators.empty() || codim() > ambient_dim) {
    throw InvalidArgument("a complete intersection in P^" + std::to_string(ambient_dim) + " needs 1.." +
                          std::to_string(ambient_dim) + " generators");
  }
  for (const auto& g : generators) {
    if (g.num_vars() != num_vars()) throw InvalidArgument("generator has the wrong number of variables");
    if (g.degree() < 1 || g.is_zero()) throw InvalidArgument("generators must be nonzero forms of positive degree");
  }
  const RationalField q;
  for (std::size_t w = 0; w < witness_points.size(); ++w) {
    const auto& p = witness_points[w];
    if (static_cast<int>(p.size()) != num_vars()) throw InvalidArgument("witness point has the wrong length");
    for (const auto& g : generators) {
      if (sgn(eval_poly(g, std::span<const mpq_class>(p))) != 0) {
        throw InvalidArgument("witness point " + std::to_string(w) + " does not lie on X");
      }
    }
    if (rank(jacobian_at(generators, p, q)) != static_cast<std::size_t>(codim())) {
      throw InvalidArgument("Jacobian is rank deficient at witness point " + std::to_string(w));
    }
  }
}

LinearSubspace LinearSubspace::from_forms(std::vector<QPoly> forms, std::optional<std::vector<std::size_t>> pivots) {
  if (forms.empty()) throw InvalidArgument("a linear subspace needs at least one cutting form");
  const int vars = forms.front().num_vars();
  const RationalField q;
  DenseMatrix<RationalField> coeffs(q, forms.size(), vars);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].degree() != 1 || forms[i].num_vars() != vars) {
      throw InvalidArgument("cutting forms must be linear in a common ring");
    }
    for (int j = 0; j < vars; ++j) {
      Exponent e(vars, 0);
      e[j] = 1;
      coeffs(i, j) = forms[i].coefficient(e);
    }
  }
  auto ech = row_reduce(coeffs);
  if (ech.rank() != forms.size()) throw InvalidArgument("dependent_forms", "cutting forms are linearly dependent");
  if (static_cast<int>(forms.size()) >= vars) throw InvalidArgument("linear subspace would be empty");

  LinearSubspace out;
  out.num_vars_ = vars;
  out.forms_ = std::move(forms);
  out.pivots_ = pivots ? *pivots : ech.pivots;
  std::sort(out.pivots_.begin(), out.pivots_.end());
  if (out.pivots_.size() != out.forms_.size() ||
      std::adjacent_find(out.pivots_.begin(), out.pivots_.end()) != out.pivots_.end() ||
      out.pivots_.back() >= static_cast<std::size_t>(vars)) {
    throw DegenerateInput("degenerate_chart", "pivot set must list " + std::to_string(out.forms_.size()) +
                                                  " distinct variables");
  }
  for (std::size_t j = 0; j < static_cast<std::size_t>(vars); ++j) {
    if (!std::binary_search(out.pivots_.begin(), out.pivots_.end(), j)) out.free_.push_back(j);
  }
  const std::size_t k = out.pivots_.size();
  DenseMatrix<RationalField> hp(q, k, k), hf(q, k, out.free_.size());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t a = 0; a < k; ++a) hp(i, a) = coeffs(i, out.pivots_[a]);
    for (std::size_t b = 0; b < out.free_.size(); ++b) hf(i, b) = coeffs(i, out.free_[b]);
  }
  DenseMatrix<RationalField> solved = [&] {
    try {
      return solve_square(hp, hf);
    } catch (const DegenerateInput&) {
      throw DegenerateInput("degenerate_chart", "cutting forms are dependent on the chosen pivot variables");
    }
  }();
  out.pivot_map_.assign(k, std::vector<mpq_class>(out.free_.size()));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t b = 0; b < out.free_.size(); ++b) out.pivot_map_[i][b] = -solved(i, b);

  const int chart = static_cast<int>(out.free_.size());
  out.images_.assign(vars, QPoly(q, chart, 1));
  for (std::size_t b = 0; b < out.free_.size(); ++b) {
    Exponent e(chart, 0);
    e[b] = 1;
    out.images_[out.free_[b]].add_term(e, 1);
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t b = 0; b < out.free_.size(); ++b) {
      Exponent e(chart, 0);
      e[b] = 1;
      out.images_[out.pivots_[i]].add_term(e, out.pivot_map_[i][b]);
    }
  }
  return out;
}

std::vector<int> expected_hilbert_function(const std::vector<int>& degrees) {
  std::vector<long> h{1};
  for (int d : degrees) {
    std::vector<long> next(h.size() + d - 1, 0);
    for (std::size_t i = 0; i < h.size(); ++i)
      for (int k = 0; k < d; ++k) next[i + k] += h[i];
    h = std::move(next);
  }
  return std::vector<int>(h.begin(), h.end());
}

namespace {

// Basis of span{m * g : deg m = e - deg g} over the generators.
std::vector<QPoly> degree_piece(const std::vector<QPoly>& gens, int vars, int e) {
  const RationalField q;
  MonomialIndex basis(vars, e);
  std::vector<std::vector<mpq_class>> rows;
  for (const auto& g : gens) {
    if (g.degree() > e) continue;
    for (const auto& m : monomials(vars, e - g.degree())) rows.push_back((monomial_form(q, m) * g).coefficients(basis));
  }
  std::vector<QPoly> out;
  if (rows.empty()) return out;
  auto ech = row_reduce(DenseMatrix<RationalField>::from_rows(q, basis.size(), rows));
  for (std::size_t k = 0; k < ech.rank(); ++k) {
    auto row = ech.reduced.row(k);
    out.push_back(QPoly::from_coefficients(q, basis, std::span<const mpq_class>(row.begin(), row.end())));
  }
  return out;
}

}  // namespace

GradedIdealPieces<RationalField> ideal_pieces_after_reduction(const CompleteIntersection& x, const LinearSubspace& l) {
  if (l.num_vars() != x.num_vars()) throw InvalidArgument("variable_mismatch", "L and X live in different spaces");
  if (l.codim() != x.dimension() + 1) {
    throw InvalidArgument("codim(L) must be dim X + 1 = " + std::to_string(x.dimension() + 1) + ", got " +
                          std::to_string(l.codim()));
  }
  std::vector<QPoly> reduced;
  std::vector<int> degrees;
  for (const auto& g : x.generators) {
    reduced.push_back(l.restrict(g));
    degrees.push_back(g.degree());
  }
  const int vars = l.chart_vars();
  const int socle = x.socle_degree();
  const auto expected = expected_hilbert_function(degrees);
  GradedIdealPieces<RationalField> pieces{RationalField{}, vars, {}};
  for (int e = 1; e <= socle + 1; ++e) {
    auto piece = degree_piece(reduced, vars, e);
    const int h = static_cast<int>(num_monomials(vars, e)) - static_cast<int>(piece.size());
    const int want = e <= socle ? expected[e] : 0;
    if (h != want) {
      throw DegenerateInput("non_general_section", "reduction has h_" + std::to_string(e) + " = " +
                                                       std::to_string(h) + ", expected " + std::to_string(want));
    }
    if (e <= socle) pieces.pieces[e] = std::move(piece);
  }
  return pieces;
}

QPoly apolar_hypersurface(const CompleteIntersection& x, const LinearSubspace& l) {
  auto pieces = ideal_pieces_after_reduction(x, l);
  try {
    return dual_socle_generator(pieces, x.socle_degree());
  } catch (const SocleKernelError& e) {
    throw DegenerateInput("section_not_gorenstein",
                          std::string("section not Artinian Gorenstein as expected: ") + e.what());
  }
}

LinearSubspace sample_linear_subspace(int num_vars, int codim, std::mt19937_64& rng, int range) {
  if (range < 1) throw InvalidArgument("coefficient range must be positive");
  const RationalField q;
  const auto width = static_cast<std::uint64_t>(2 * range + 1);
  for (int tries = 0; tries < 100; ++tries) {
    std::vector<QPoly> forms;
    for (int i = 0; i < codim; ++i) {
      QPoly h(q, num_vars, 1);
      for (int j = 0; j < num_vars; ++j) {
        Exponent e(num_vars, 0);
        e[j] = 1;
        h.add_term(e, static_cast<long>(rng() % width) - range);
      }
      forms.push_back(std::move(h));
    }
    try {
      return LinearSubspace::from_forms(std::move(forms));
    } catch (const InvalidArgument&) {
    }
  }
  throw DegenerateInput("degenerate_chart", "could not sample independent cutting forms");
}

SectionResult sample_section(const CompleteIntersection& x, std::uint64_t seed, int range) {
  std::mt19937_64 rng(seed);
  for (int attempt = 1;; ++attempt) {
    auto l = sample_linear_subspace(x.num_vars(), x.dimension() + 1, rng, range);
    try {
      auto f = apolar_hypersurface(x, l);
      auto h = hilbert_function(f);
      return SectionResult{std::move(l), std::move(f), std::move(h), attempt};
    } catch (const DegenerateInput&) {
      if (attempt >= 2) throw;
    }
  }
}

}  // namespace apolar
