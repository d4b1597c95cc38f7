#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace levy {

/// A positive function of r > 0, closed form or tabulated.
///
/// Used for the scale profile w_ν, the unimodal profile γ, radial kernels j and the
/// left-continuous inverse a. Values are immutable; copies share the evaluator.
class RadialProfile {
public:
    enum class Kind { Power, PowerLog, LogCosh, Tabulated, Function };

    RadialProfile() = default;

    /// coeff · r^exponent
    static RadialProfile power(double coeff, double exponent);
    /// coeff · r^exponent · ln(1 + r)^log_exponent
    static RadialProfile power_log(double coeff, double exponent, double log_exponent);
    /// coeff · [ln cosh √r]^exponent
    static RadialProfile log_cosh(double coeff, double exponent);
    /// Log-log linear interpolation through (r_i, v_i); power-law extension past the ends.
    static RadialProfile tabulated(std::vector<double> r, std::vector<double> v);
    /// Two-column CSV `r,value` (header line optional).
    static RadialProfile load_csv(const std::string& path);
    static RadialProfile from_function(std::function<double(double)> f, std::string description,
                                       double lower = 0.0,
                                       double upper = std::numeric_limits<double>::infinity());

    double operator()(double r) const { return eval_(r); }
    bool valid() const { return static_cast<bool>(eval_); }

    /// Working range on which the profile is trusted (tables: the tabulated span).
    double lower() const { return lower_; }
    double upper() const { return upper_; }

    Kind kind() const { return kind_; }
    bool is_power() const { return kind_ == Kind::Power; }
    /// Closed-form parameters (coeff, exponent, log_exponent) for the analytic kinds.
    const std::vector<double>& params() const { return params_; }
    const std::vector<double>& table_r() const;
    const std::vector<double>& table_v() const;
    const std::string& description() const { return description_; }

    /// r ↦ factor · f(zoom · r), kind preserved where it stays closed form.
    RadialProfile scaled(double factor, double zoom) const;

private:
    struct Table {
        std::vector<double> r, v, log_r, log_v;
    };

    Kind kind_ = Kind::Function;
    std::function<double(double)> eval_;
    std::vector<double> params_;
    std::shared_ptr<const Table> table_;
    double lower_ = 0.0;
    double upper_ = std::numeric_limits<double>::infinity();
    std::string description_;
};

}  // namespace levy
