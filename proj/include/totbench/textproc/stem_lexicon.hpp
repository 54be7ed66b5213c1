// Copyright 2026 The tot-bench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <string_view>
#include <utility>

namespace totbench::textproc {

/// Bundled copy of data/krovetz_light_lexicon.tsv: irregular forms and words
/// the suffix rules must leave alone.
inline constexpr std::array<std::pair<std::string_view, std::string_view>, 178> kStemLexicon = {{
    {"children", "child"},
    {"men", "man"},
    {"women", "woman"},
    {"people", "person"},
    {"feet", "foot"},
    {"teeth", "tooth"},
    {"geese", "goose"},
    {"mice", "mouse"},
    {"lice", "louse"},
    {"oxen", "ox"},
    {"wolves", "wolf"},
    {"knives", "knife"},
    {"wives", "wife"},
    {"lives", "life"},
    {"leaves", "leaf"},
    {"thieves", "thief"},
    {"halves", "half"},
    {"shelves", "shelf"},
    {"selves", "self"},
    {"loaves", "loaf"},
    {"calves", "calf"},
    {"elves", "elf"},
    {"scarves", "scarf"},
    {"dwarves", "dwarf"},
    {"hooves", "hoof"},
    {"heroes", "hero"},
    {"potatoes", "potato"},
    {"tomatoes", "tomato"},
    {"echoes", "echo"},
    {"vetoes", "veto"},
    {"torpedoes", "torpedo"},
    {"volcanoes", "volcano"},
    {"goes", "go"},
    {"does", "do"},
    {"gone", "go"},
    {"went", "go"},
    {"did", "do"},
    {"done", "do"},
    {"was", "was"},
    {"has", "has"},
    {"is", "is"},
    {"this", "this"},
    {"his", "his"},
    {"its", "its"},
    {"us", "us"},
    {"yes", "yes"},
    {"bus", "bus"},
    {"buses", "bus"},
    {"gas", "gas"},
    {"gases", "gas"},
    {"news", "news"},
    {"series", "series"},
    {"species", "species"},
    {"always", "always"},
    {"perhaps", "perhaps"},
    {"lens", "lens"},
    {"physics", "physics"},
    {"mathematics", "mathematics"},
    {"politics", "politics"},
    {"athletics", "athletics"},
    {"christmas", "christmas"},
    {"pants", "pants"},
    {"glasses", "glasses"},
    {"clothes", "clothes"},
    {"headquarters", "headquarters"},
    {"focus", "focus"},
    {"focused", "focus"},
    {"focusing", "focus"},
    {"bias", "bias"},
    {"biased", "bias"},
    {"added", "add"},
    {"adding", "add"},
    {"being", "being"},
    {"nothing", "nothing"},
    {"something", "something"},
    {"anything", "anything"},
    {"everything", "everything"},
    {"morning", "morning"},
    {"evening", "evening"},
    {"ceiling", "ceiling"},
    {"wedding", "wedding"},
    {"during", "during"},
    {"thing", "thing"},
    {"king", "king"},
    {"ring", "ring"},
    {"sing", "sing"},
    {"spring", "spring"},
    {"string", "string"},
    {"swing", "swing"},
    {"wing", "wing"},
    {"bring", "bring"},
    {"hundred", "hundred"},
    {"sacred", "sacred"},
    {"naked", "naked"},
    {"wicked", "wicked"},
    {"kindred", "kindred"},
    {"rugged", "rugged"},
    {"ragged", "ragged"},
    {"beloved", "beloved"},
    {"wretched", "wretched"},
    {"crooked", "crooked"},
    {"jagged", "jagged"},
    {"speed", "speed"},
    {"breed", "breed"},
    {"bleed", "bleed"},
    {"greed", "greed"},
    {"steed", "steed"},
    {"tweed", "tweed"},
    {"creed", "creed"},
    {"proceed", "proceed"},
    {"exceed", "exceed"},
    {"succeed", "succeed"},
    {"indeed", "indeed"},
    {"ache", "ache"},
    {"aches", "ache"},
    {"headache", "headache"},
    {"headaches", "headache"},
    {"cache", "cache"},
    {"caches", "cache"},
    {"niche", "niche"},
    {"niches", "niche"},
    {"moustache", "moustache"},
    {"moustaches", "moustache"},
    {"mustache", "mustache"},
    {"mustaches", "mustache"},
    {"avalanche", "avalanche"},
    {"avalanches", "avalanche"},
    {"change", "change"},
    {"changed", "change"},
    {"changing", "change"},
    {"arrange", "arrange"},
    {"arranged", "arrange"},
    {"arranging", "arrange"},
    {"range", "range"},
    {"ranged", "range"},
    {"strange", "strange"},
    {"challenge", "challenge"},
    {"challenged", "challenge"},
    {"challenging", "challenge"},
    {"create", "create"},
    {"created", "create"},
    {"creating", "create"},
    {"relate", "relate"},
    {"related", "relate"},
    {"relating", "relate"},
    {"state", "state"},
    {"stated", "state"},
    {"stating", "state"},
    {"phase", "phase"},
    {"phased", "phase"},
    {"dies", "die"},
    {"died", "die"},
    {"dying", "die"},
    {"lies", "lie"},
    {"lied", "lie"},
    {"lying", "lie"},
    {"ties", "tie"},
    {"tied", "tie"},
    {"tying", "tie"},
    {"movies", "movie"},
    {"cookies", "cookie"},
    {"zombies", "zombie"},
    {"rookies", "rookie"},
    {"calories", "calorie"},
    {"canoes", "canoe"},
    {"excited", "excite"},
    {"exciting", "excite"},
    {"invited", "invite"},
    {"inviting", "invite"},
    {"quoted", "quote"},
    {"quoting", "quote"},
    {"aged", "age"},
    {"aging", "age"},
    {"ageing", "age"},
    {"sibling", "sibling"},
    {"offspring", "offspring"},
    {"required", "require"},
    {"requiring", "require"},
}};

}  // namespace totbench::textproc
