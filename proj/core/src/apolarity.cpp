#include "apolar/apolarity.hpp"

namespace apolar {

unsigned long generic_rank(int d, int n) {
  if (d < 1 || n < 0) throw InvalidArgument("generic_rank needs d >= 1 and n >= 0");
  if (d == 2) return static_cast<unsigned long>(n) + 1;
  if (d == 4 && n == 2) return 6;
  if (d == 4 && n == 3) return 10;
  if (d == 4 && n == 4) return 15;
  if (d == 3 && n == 4) return 8;
  mpz_class forms = binomial(n + d, n);
  mpz_class vars = n + 1;
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), forms.get_mpz_t(), vars.get_mpz_t());
  if (!q.fits_ulong_p()) throw InvalidArgument("generic rank does not fit in 64 bits");
  return q.get_ui();
}

SpecialnessReport specialness_report(int genus) {
  if (genus < 4) throw InvalidArgument("genus_out_of_range", "specialness report needs genus >= 4");
  SpecialnessReport r{};
  r.genus = genus;
  r.construction_count = 2ul * static_cast<unsigned long>(genus) - 4;
  r.generic_count = generic_rank(3, genus - 3);
  r.is_special = r.construction_count < r.generic_count;
  r.grassmannian_dim = 2L * (genus - 2);
  r.cubic_moduli_dim = binomial(genus, 3).get_si() - static_cast<long>(genus - 2) * (genus - 2);
  r.image_deficient = r.grassmannian_dim < r.cubic_moduli_dim;
  return r;
}

}  // namespace apolar
