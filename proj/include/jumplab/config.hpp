#ifndef JUMPLAB_CONFIG_HPP
#define JUMPLAB_CONFIG_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "jumplab/kernel.hpp"
#include "jumplab/simulate.hpp"
#include "jumplab/vec.hpp"

namespace jumplab {

// malformed file, missing key, bad value, or unknown key; the message always
// carries the key and (when available) the source line
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Flat dotted-key store parsed from `key.sub.key = value` lines. `#` starts a
// comment, blank lines are skipped. Reads mark keys as used so a command can
// reject everything it did not understand.
class ConfigMap {
  public:
    static ConfigMap parse_file(const std::string& path);
    static ConfigMap parse_text(const std::string& text,
                                const std::string& origin = "<inline>");

    // --set key=value; key must not be brand new unless allow_new
    void set_override(const std::string& key, const std::string& value);

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key);
    std::string get_string_or(const std::string& key, const std::string& def);
    double get_double(const std::string& key);
    double get_double_or(const std::string& key, double def);
    long get_long(const std::string& key);
    long get_long_or(const std::string& key, long def);
    int get_int(const std::string& key);
    int get_int_or(const std::string& key, int def);
    std::uint64_t get_seed_or(const std::string& key, std::uint64_t def);

    // comma-separated lists
    std::vector<double> get_doubles(const std::string& key);
    std::vector<double> get_doubles_or(const std::string& key,
                                       const std::vector<double>& def);
    Vec get_vec(const std::string& key, int dim);
    Vec get_vec_or(const std::string& key, const Vec& def);

    // throws ConfigError naming every key that was never read
    void check_all_used() const;

    std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

  private:
    struct Entry {
        std::string value;
        int line = 0;
        mutable bool used = false;
    };
    std::map<std::string, Entry> entries_;
    std::string origin_;

    const Entry& require(const std::string& key);
};

// builds the kernel from the kernel.* keys (dim, alpha, ell, tail, kappa,
// sigma, delta, caps, modulator)
JumpKernel kernel_from_config(ConfigMap& cfg);

// sim.epsilon / sim.n is read by the caller; this covers epsilon, max_events,
// horizon and the top-level seed
SimConfig sim_from_config(ConfigMap& cfg);

}  // namespace jumplab

#endif
