// Registers a proportional pH controller next to the built-ins and runs it for two days
// with the Player-1 DO, harvest and temperature loops.

#include <algorithm>
#include <iostream>

#include "raceway/app.hpp"

using namespace raceway;

namespace {

class ProportionalPh final : public Controller {
public:
    explicit ProportionalPh(double q_max) : q_max_(q_max) {}

    void update(const ControllerContext& ctx, ControlSignals& u) override
    {
        // full CO2 flow 0.3 pH units above the reference
        u.q_co2 = std::clamp((ctx.obs.ph - ctx.refs.ph_ref) / 0.3, 0.0, 1.0) * q_max_;
    }
    std::string name() const override { return "proportional"; }

private:
    double q_max_;
};

} // namespace

int main()
{
    try {
        auto& reg = ControllerRegistry::instance();
        reg.add(ControllerRegistry::Slot::ph, "proportional",
                [](const ControllerDeps& d) { return std::make_unique<ProportionalPh>(d.limits.q_co2_max); });

        auto m = io::load_manifest(io::asset_dir() + "/manifests/player1.ini");
        m.days = 2.0;
        m.sim.horizon = m.days * 86400.0;
        m.controllers.ph = "proportional";
        const auto log = run_manifest(m);

        m.controllers.ph = "onoff";
        const auto base = run_manifest(m);
        const auto rel = normalize(loop_costs(log), loop_costs(base));
        std::cout << io::emit_summary(log) << "\nj_ph relative to on/off: " << rel.j_ph << "\n";
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
