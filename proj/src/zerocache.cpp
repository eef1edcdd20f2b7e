#include "psilab/zerocache.hpp"

#include "psilab/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

namespace psilab {

using nlohmann::json;

void ZeroStore::add(const ZeroSet& zs) {
    auto it = sets_.find(zs.label);
    if (it == sets_.end()) {
        sets_[zs.label] = zs;
        return;
    }
    ZeroSet& cur = it->second;
    for (size_t i = 0; i < zs.ordinates.size(); ++i)
        cur.ordinates.push_back(zs.ordinates[i]);
    std::sort(cur.ordinates.begin(), cur.ordinates.end());
    cur.ordinates.erase(std::unique(cur.ordinates.begin(), cur.ordinates.end(),
                                    [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                        cur.ordinates.end());
    cur.multiplicities.assign(cur.ordinates.size(), 1);
    cur.height = std::max(cur.height, zs.height);
    cur.precision_digits = std::min(cur.precision_digits, zs.precision_digits);
}

bool ZeroStore::covers(const std::string& label, double T) const {
    auto it = sets_.find(label);
    return it != sets_.end() && it->second.height >= T - 1e-12;
}

const ZeroSet& ZeroStore::require(const std::string& label, double T) const {
    auto it = sets_.find(label);
    if (it == sets_.end())
        throw insufficient_zeros_error("no cached zeros for character " + label);
    if (it->second.height < T - 1e-12)
        throw insufficient_zeros_error("zeros for " + label + " cached to height " +
                                       std::to_string(it->second.height) +
                                       " < requested " + std::to_string(T));
    return it->second;
}

std::vector<double> ZeroStore::signed_ordinates(const DirichletCharacter& chi, double T) const {
    const ZeroSet& pos = require(chi.label(), T);
    const ZeroSet& neg = require(chi.conjugate().label(), T);
    std::vector<double> out;
    for (double g : neg.ordinates)
        if (g <= T)
            out.push_back(-g);
    std::reverse(out.begin(), out.end());
    for (double g : pos.ordinates)
        if (g <= T)
            out.push_back(g);
    return out;
}

ZeroStore load_zero_cache(const std::string& path) {
    ZeroStore store;
    std::ifstream in(path);
    if (!in)
        return store;
    std::string line;
    std::map<std::string, ZeroSet> partial;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        json rec = json::parse(line);
        std::string label = rec.at("label").get<std::string>();
        ZeroSet& zs = partial[label];
        zs.label = label;
        zs.q = rec.at("q").get<long long>();
        zs.height = std::max(zs.height, rec.at("height_scanned").get<double>());
        zs.ordinates.push_back(std::stod(rec.at("gamma").get<std::string>()));
        zs.precision_digits = rec.at("prec_digits").get<int>();
    }
    for (auto& [label, zs] : partial) {
        std::sort(zs.ordinates.begin(), zs.ordinates.end());
        zs.multiplicities.assign(zs.ordinates.size(), 1);
        store.add(zs);
    }
    return store;
}

void append_zero_records(const std::string& path, const ZeroSet& zs, double gamma_above) {
    if (path.empty())
        return;
    int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd < 0)
        throw resource_error("cannot open zero cache for append: " + path);
    ::flock(fd, LOCK_EX);  // single writer
    std::ostringstream os;
    for (double g : zs.ordinates) {
        if (g <= gamma_above)
            continue;
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.15f", g);
        json rec = {{"q", zs.q},
                    {"label", zs.label},
                    {"gamma", std::string(buf)},
                    {"prec_digits", zs.precision_digits},
                    {"height_scanned", zs.height}};
        os << rec.dump() << "\n";
    }
    std::string payload = os.str();
    ssize_t written = ::write(fd, payload.data(), payload.size());
    ::flock(fd, LOCK_UN);
    ::close(fd);
    if (written != static_cast<ssize_t>(payload.size()))
        throw resource_error("short write to zero cache: " + path);
}

void ensure_scanned(ZeroStore& store, long long q, double T, const std::string& cache_path,
                    const LfuncOptions& opt) {
    CharacterGroup group(q);
    bool all_covered = true;
    for (const auto& chi : group.characters())
        if (!chi.is_principal() && chi.is_primitive() && !store.covers(chi.label(), T))
            all_covered = false;
    if (all_covered)
        return;

    ScanResult fresh = scan_zeros_mod(q, T, opt);
    for (const auto& zs : fresh.sets) {
        double old_height = 0;
        if (auto it = store.sets().find(zs.label); it != store.sets().end()) {
            const ZeroSet& cached = it->second;
            old_height = cached.height;
            // verify: every previously cached ordinate must re-appear
            for (double g : cached.ordinates) {
                if (g > T)
                    continue;
                auto lb = std::lower_bound(zs.ordinates.begin(), zs.ordinates.end(), g - 1e-6);
                if (lb == zs.ordinates.end() || std::abs(*lb - g) > 1e-6)
                    throw audit_error("zero cache verification failed for " + zs.label +
                                      " near gamma = " + std::to_string(g));
            }
        }
        append_zero_records(cache_path, zs, old_height);
        store.add(zs);
    }
}

} // namespace psilab
