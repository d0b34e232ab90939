#include "jcover/cache.hpp"

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "jcover/errors.hpp"
#include "jcover/gl2q.hpp"

namespace jcover::cache {

namespace fs = std::filesystem;

std::string directory() {
    if (const char* env = std::getenv("JCOVER_CACHE"); env && *env) return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return std::string(xdg) + "/jcover";
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::string(home) + "/.cache/jcover";
    return "./.jcover-cache";
}

void write_atomic(const std::string& path, const std::string& content) {
    fs::path target(path);
    fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out) throw error("cannot write " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

bool phi_plausible(const modpoly::BivariatePolynomial& p, unsigned long level) {
    unsigned long psi = gl2q::psi(level);
    if (p.deg_x() != psi || !p.is_monic_in_x()) return false;
    if (level > 1 && !p.is_symmetric()) return false;
    return true;
}

std::mutex phi_mu;
std::map<unsigned long, std::shared_ptr<const modpoly::BivariatePolynomial>> phi_memo;

std::mutex hclass_mu;
std::map<mpz_class, std::shared_ptr<const cm::ClassPolynomial>,
         bool (*)(const mpz_class&, const mpz_class&)>
    hclass_memo([](const mpz_class& a, const mpz_class& b) { return cmp(a, b) < 0; });

} // namespace

std::shared_ptr<const modpoly::BivariatePolynomial> phi(unsigned long level) {
    {
        std::lock_guard<std::mutex> lock(phi_mu);
        if (auto it = phi_memo.find(level); it != phi_memo.end()) return it->second;
    }

    std::string path = directory() + "/phi_" + std::to_string(level) + ".txt";
    std::shared_ptr<const modpoly::BivariatePolynomial> result;
    if (auto text = read_file(path)) {
        try {
            auto [header, poly] = modpoly::BivariatePolynomial::parse(*text);
            if (header == "PHI N " + std::to_string(level) && phi_plausible(poly, level))
                result = std::make_shared<const modpoly::BivariatePolynomial>(
                    std::move(poly));
        } catch (const error&) {
            // stale or foreign file: recompute below
        }
    }
    if (!result) {
        auto poly = modpoly::modular_polynomial_auto(level);
        write_atomic(path, poly.serialize("PHI N " + std::to_string(level)));
        result = std::make_shared<const modpoly::BivariatePolynomial>(std::move(poly));
    }

    std::lock_guard<std::mutex> lock(phi_mu);
    auto [it, inserted] = phi_memo.emplace(level, std::move(result));
    return it->second;
}

std::shared_ptr<const cm::ClassPolynomial> hclass(const mpz_class& disc) {
    {
        std::lock_guard<std::mutex> lock(hclass_mu);
        if (auto it = hclass_memo.find(disc); it != hclass_memo.end()) return it->second;
    }

    std::string path = directory() + "/hclass_" + disc.get_str() + ".txt";
    std::shared_ptr<const cm::ClassPolynomial> result;
    if (auto text = read_file(path)) {
        try {
            auto poly = cm::ClassPolynomial::parse(*text);
            if (poly.disc() == disc &&
                poly.degree() == cm::reduced_forms(disc).size())
                result = std::make_shared<const cm::ClassPolynomial>(std::move(poly));
        } catch (const error&) {
        }
    }
    if (!result) {
        auto poly = cm::class_polynomial_auto(disc);
        write_atomic(path, poly.serialize());
        result = std::make_shared<const cm::ClassPolynomial>(std::move(poly));
    }

    std::lock_guard<std::mutex> lock(hclass_mu);
    auto [it, inserted] = hclass_memo.emplace(disc, std::move(result));
    return it->second;
}

} // namespace jcover::cache
