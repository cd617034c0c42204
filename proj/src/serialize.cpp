#include "motionsimp/serialize.hpp"

#include <cmath>
#include <string>

#include "motionsimp/errors.hpp"
#include "motionsimp/motion_io.hpp"

namespace motionsimp {

namespace {

std::string criterion_key(std::size_t i) { return "c" + std::to_string(i + 1); }

// Out-of-range and NaN values are rejected by the validator, not here.
double number(const json& v, const std::string& key) {
    if (!v.is_number()) fail(ErrorKind::InvalidArgument, key + " must be a number");
    return v.get<double>();
}

std::size_t criterion_index(const std::string& key) {
    for (std::size_t i = 0; i < kNumCriteria; ++i) {
        if (key == criterion_key(i)) return i;
    }
    fail(ErrorKind::InvalidArgument, "unknown criterion key: " + key);
}

json nullable(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string dump_json(const json& doc) { return doc.dump(); }

json weights_to_json(const MetricWeights& w) {
    return {
        {"alpha1", w.c1.alpha1}, {"alpha2", w.c1.alpha2}, {"alpha3", w.c1.alpha3},
        {"beta", w.c2.beta},     {"gamma1", w.c3.gamma1}, {"gamma2", w.c3.gamma2},
        {"gamma3", w.c3.gamma3}, {"delta4", w.c4.delta},  {"lambda", w.c5.lambda},
        {"delta5", w.c5.delta},  {"epsilon", w.c5.epsilon}, {"entropy_bins", w.entropy_bins},
        {"sg_window", w.smoothing.window}, {"sg_order", w.smoothing.order},
    };
}

json profile_to_json(const ComplexityProfile& profile, const MotionSequence& seq) {
    json doc;
    json acts = json::object();
    for (std::size_t i = 0; i < kNumCriteria; ++i) {
        doc[criterion_key(i)] = profile.scores[i];
        acts[criterion_key(i)] = profile.activations[i];
    }
    doc["activations"] = std::move(acts);
    doc["weights"] = weights_to_json(profile.weights_used);
    doc["frames"] = seq.frames();
    doc["fps"] = seq.fps();
    doc["skeleton"] = {{"joints", seq.skeleton().joint_names}, {"parents", seq.skeleton().joint_parents}};
    return doc;
}

std::array<bool, kNumCriteria> parse_criteria(std::string_view text) {
    std::array<bool, kNumCriteria> on{};
    if (text == "all") return {true, true, true, true, true};
    if (text == "none" || text.empty()) return on;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        std::string_view item = text.substr(pos, comma - pos);
        if (!item.empty() && (item.front() == 'c' || item.front() == 'C')) item.remove_prefix(1);
        if (item.size() != 1 || item[0] < '1' || item[0] > '5') {
            fail(ErrorKind::InvalidArgument, "bad criteria list: " + std::string(text));
        }
        on[static_cast<std::size_t>(item[0] - '1')] = true;
        pos = comma + 1;
    }
    return on;
}

SimplifyConfig config_from_json(const json& doc) {
    if (!doc.is_object()) fail(ErrorKind::InvalidArgument, "config must be a JSON object");
    SimplifyConfig c;
    for (const auto& [key, v] : doc.items()) {
        if (key == "criteria") {
            if (v.is_string()) {
                c.criteria_enabled = parse_criteria(v.get<std::string>());
            } else if (v.is_array()) {
                c.criteria_enabled = {};
                for (const auto& item : v) {
                    if (!item.is_number_integer() || item.get<int>() < 1 || item.get<int>() > 5) {
                        fail(ErrorKind::InvalidArgument, "criteria entries must be integers 1..5");
                    }
                    c.criteria_enabled[static_cast<std::size_t>(item.get<int>() - 1)] = true;
                }
            } else {
                fail(ErrorKind::InvalidArgument, "criteria must be a string or an array");
            }
        } else if (key == "k") {
            c.k = number(v, key);
        } else if (key == "lambda") {
            if (!v.is_number_integer()) fail(ErrorKind::InvalidArgument, "lambda must be an integer");
            c.lambda_slow = v.get<int>();
        } else if (key == "tau" || key == "min_len") {
            if (!v.is_object()) fail(ErrorKind::InvalidArgument, key + " must be an object keyed c1..c5");
            for (const auto& [ck, cv] : v.items()) {
                const std::size_t i = criterion_index(ck);
                if (cv.is_null()) continue;
                if (key == "tau") {
                    c.tau[i] = number(cv, key);
                } else {
                    if (!cv.is_number_integer() || cv.get<long long>() < 0) {
                        fail(ErrorKind::InvalidArgument, "min_len entries must be non-negative integers");
                    }
                    c.min_len[i] = cv.get<std::size_t>();
                }
            }
        } else if (key == "psi_target") {
            if (!v.is_null()) c.psi_target = number(v, key);
        } else if (key == "eps") {
            c.epsilon = number(v, key);
        } else if (key == "alpha") {
            c.alpha = number(v, key);
        } else if (key == "flip") {
            if (!v.is_array() || v.size() != 3) fail(ErrorKind::InvalidArgument, "flip must be 3 integers");
            for (std::size_t a = 0; a < 3; ++a) {
                if (!v[a].is_number_integer()) fail(ErrorKind::InvalidArgument, "flip must be 3 integers");
                c.flip_vector[a] = v[a].get<int>();
            }
        } else if (key == "sg_window" || key == "sg_order") {
            if (!v.is_number_integer()) fail(ErrorKind::InvalidArgument, key + " must be an integer");
            (key == "sg_window" ? c.smoothing.window : c.smoothing.order) = v.get<int>();
        } else {
            fail(ErrorKind::InvalidArgument, "unknown config key: " + key);
        }
    }
    c.validate();
    return c;
}

json config_to_json(const SimplifyConfig& c) {
    json criteria = json::array();
    json tau = json::object();
    json min_len = json::object();
    for (std::size_t i = 0; i < kNumCriteria; ++i) {
        if (c.criteria_enabled[i]) criteria.push_back(i + 1);
        tau[criterion_key(i)] = nullable(c.tau[i]);
        min_len[criterion_key(i)] = c.min_len[i] ? json(*c.min_len[i]) : json(nullptr);
    }
    return {
        {"criteria", criteria}, {"k", c.k},          {"lambda", c.lambda_slow},
        {"tau", tau},           {"min_len", min_len}, {"psi_target", nullable(c.psi_target)},
        {"eps", c.epsilon},     {"alpha", c.alpha},   {"flip", c.flip_vector},
        {"sg_window", c.smoothing.window}, {"sg_order", c.smoothing.order},
    };
}

json interval_to_json(const ComplexInterval& iv) {
    return {{"criterion", iv.criterion}, {"start", iv.start}, {"end", iv.end}, {"joints", iv.joints}};
}

json stage_to_json(const StageRecord& s) {
    json intervals = json::array();
    for (const auto& iv : s.intervals) intervals.push_back(interval_to_json(iv));
    return {
        {"criterion", s.criterion},
        {"enabled", s.enabled},
        {"attempted", s.attempted},
        {"accepted", s.accepted},
        {"tau", s.tau},
        {"min_len", s.min_len},
        {"score_before", s.score_before},
        {"score_candidate", nullable(s.score_candidate)},
        {"intervals", intervals},
        {"flips", s.flips},
        {"digest_before", s.digest_before},
        {"digest_after", s.digest_after},
    };
}

json result_to_json(const SimplifyResult& r, bool with_frames) {
    json stages = json::array();
    for (const auto& s : r.applied) stages.push_back(stage_to_json(s));
    json doc = {
        {"before", profile_to_json(r.before, r.motion)},
        {"after", profile_to_json(r.after, r.motion)},
        {"applied", stages},
    };
    if (with_frames) doc["motion"] = motion_to_json(r.motion);
    return doc;
}

json eval_report_to_json(const EvalReport& r) {
    return {
        {"pfc", r.pfc},
        {"pbc", r.pbc},
        {"pbc_vs_reference", nullable(r.pbc_vs_reference)},
        {"fid_k", nullable(r.fid_k)},
        {"fid_g", nullable(r.fid_g)},
        {"dist_k", r.dist_k},
        {"dist_g", r.dist_g},
        {"dtw_cost", r.dtw_cost},
        {"pairs", r.pairs},
        {"version", r.version},
    };
}

}  // namespace motionsimp
