#pragma once

#include "psilab/lfunc.hpp"

#include <map>
#include <string>
#include <vector>

namespace psilab {

// In-memory view of the scanned zeros, keyed by character label.
class ZeroStore {
  public:
    void add(const ZeroSet& zs);

    bool covers(const std::string& label, double T) const;
    // Throws insufficient_zeros_error when the label is missing or the
    // scanned height is below T.
    const ZeroSet& require(const std::string& label, double T) const;

    // Signed ordinates of chi with 0 < |gamma| <= T: positive side from
    // chi's set, negative side reflected from conj(chi)'s set.
    std::vector<double> signed_ordinates(const DirichletCharacter& chi, double T) const;

    const std::map<std::string, ZeroSet>& sets() const { return sets_; }

  private:
    std::map<std::string, ZeroSet> sets_;
};

// JSON-lines cache: one record per zero,
// {"q":..,"label":"..","gamma":"<decimal>","prec_digits":..,"height_scanned":..}
ZeroStore load_zero_cache(const std::string& path);  // missing file -> empty store
void append_zero_records(const std::string& path, const ZeroSet& zs, double gamma_above);

// Makes sure every primitive non-principal character mod q is scanned to
// height T in both store and cache file: serves from cache when covered,
// otherwise re-scans [0, T], verifies previously cached ordinates against
// the fresh scan (audit_error on mismatch), and appends only the new ones.
// An empty cache_path keeps everything in memory.
void ensure_scanned(ZeroStore& store, long long q, double T, const std::string& cache_path,
                    const LfuncOptions& opt = {});

} // namespace psilab
