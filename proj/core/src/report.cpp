#include "confres/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace confres
{

namespace
{

using json = nlohmann::ordered_json;

const Evidence* find_evidence(const Problem& p, const EntityId& atom)
{
  for ( const auto* list : { &p.evidences, &p.peer.truths } )
  {
    for ( const auto& e : *list )
    {
      if ( e.atom == atom )
        return &e;
    }
  }
  return nullptr;
}

std::string render_actions(const JointAction& a)
{
  std::string out;
  for ( const auto r : all_roles )
  {
    if ( !out.empty() )
      out += ' ';
    out += to_string( r ) + ":" + a[static_cast<std::size_t>( r )];
  }
  return out;
}

json set_json(const GoalSet& s) { return json( std::vector<std::string>( s.begin(), s.end() ) ); }

GoalSet set_from(const json& j)
{
  const auto v = j.get<std::vector<std::string>>();
  return GoalSet( v.begin(), v.end() );
}

} // namespace

TraceReport make_report(const std::string& scenario, const Problem& p, const AnalysisResult& r)
{
  TraceReport out;
  out.scenario = scenario;
  out.horizon = p.horizon;
  out.mode = to_string( p.mode );
  out.max_level = p.max_level;
  out.conflict = r.conflict;
  out.resolved = r.resolved;
  out.level = r.level;
  out.agreed = r.agreed;
  for ( const auto& g : r.worlds.groups )
    out.worlds.push_back( { g.name(), g.members } );
  out.degenerate = r.worlds.degenerate;
  for ( const auto& c : r.causes )
  {
    CauseReport cr{ c.group_name, c.candidate, c.recombined, c.checked, c.violated, c.atoms, {}, {}, {} };
    for ( const auto& a : c.atoms )
    {
      JustificationLink link{ a, "core", "", "" };
      if ( std::find( c.contested.begin(), c.contested.end(), a ) != c.contested.end() )
        link.role = "contested";
      if ( a == world_atom )
        link.body = "world model";
      else if ( const auto* e = find_evidence( p, a ) )
      {
        link.body = to_string( e->body );
        link.provenance = e->provenance;
      }
      cr.chain.push_back( std::move( link ) );
    }
    for ( const auto& s : c.witness.states )
      cr.witness_states.push_back( render_state( p.world, s ) );
    for ( const auto& a : c.witness.actions )
      cr.witness_actions.push_back( render_actions( a ) );
    out.causes.push_back( std::move( cr ) );
  }
  for ( const auto& [joint, goals] : r.winning )
    out.winning.push_back( { joint.label(), goals } );
  for ( const auto& ref : r.refinements )
    out.refinements.push_back( { ref.level, ref.depth, ref.ok } );
  out.discarded = r.final_info.discarded;
  out.trace = r.trace;
  return out;
}

std::string to_json(const TraceReport& r)
{
  json j;
  j["schema"] = r.schema;
  j["scenario"] = r.scenario;
  j["horizon"] = r.horizon;
  j["mode"] = r.mode;
  j["max_level"] = r.max_level;
  j["conflict"] = r.conflict;
  j["resolved"] = r.resolved;
  j["level"] = r.level;
  j["agreed"] = r.agreed ? set_json( *r.agreed ) : json( nullptr );
  j["worlds"] = json::array();
  for ( const auto& w : r.worlds )
    j["worlds"].push_back( { { "name", w.name }, { "members", w.members } } );
  j["degenerate"] = r.degenerate;
  j["causes"] = json::array();
  for ( const auto& c : r.causes )
  {
    json jc;
    jc["group"] = c.group;
    jc["candidate"] = c.candidate;
    jc["recombined"] = c.recombined;
    jc["checked"] = set_json( c.checked );
    jc["violated"] = set_json( c.violated );
    jc["atoms"] = c.atoms;
    jc["justification"] = json::array();
    for ( const auto& l : c.chain )
      jc["justification"].push_back(
          { { "atom", l.atom }, { "role", l.role }, { "body", l.body }, { "provenance", l.provenance } } );
    jc["witness"] = { { "states", c.witness_states }, { "actions", c.witness_actions } };
    j["causes"].push_back( std::move( jc ) );
  }
  j["winning"] = json::array();
  for ( const auto& w : r.winning )
    j["winning"].push_back( { { "strategy", w.strategy }, { "goals", set_json( w.goals ) } } );
  j["refinements"] = json::array();
  for ( const auto& ref : r.refinements )
    j["refinements"].push_back( { { "level", ref.level }, { "depth", ref.depth }, { "ok", ref.ok } } );
  j["discarded"] = r.discarded;
  j["trace"] = json::array();
  for ( const auto& e : r.trace )
  {
    json fields = json::array();
    for ( const auto& [k, v] : e.fields )
      fields.push_back( { k, v } );
    j["trace"].push_back( { { "kind", e.kind }, { "depth", e.depth }, { "level", e.level }, { "fields", fields } } );
  }
  return j.dump( 2 ) + "\n";
}

TraceReport report_from_json(std::string_view text)
{
  try
  {
    const auto j = json::parse( text );
    TraceReport r;
    r.schema = j.at( "schema" ).get<int>();
    if ( r.schema != 1 )
      throw Error( "unsupported report schema " + std::to_string( r.schema ) );
    r.scenario = j.at( "scenario" ).get<std::string>();
    r.horizon = j.at( "horizon" ).get<unsigned>();
    r.mode = j.at( "mode" ).get<std::string>();
    r.max_level = j.at( "max_level" ).get<int>();
    r.conflict = j.at( "conflict" ).get<bool>();
    r.resolved = j.at( "resolved" ).get<bool>();
    r.level = j.at( "level" ).get<int>();
    if ( !j.at( "agreed" ).is_null() )
      r.agreed = set_from( j.at( "agreed" ) );
    for ( const auto& w : j.at( "worlds" ) )
      r.worlds.push_back( { w.at( "name" ).get<std::string>(), w.at( "members" ).get<std::vector<EntityId>>() } );
    r.degenerate = j.at( "degenerate" ).get<std::vector<EntityId>>();
    for ( const auto& jc : j.at( "causes" ) )
    {
      CauseReport c;
      c.group = jc.at( "group" ).get<std::string>();
      c.candidate = jc.at( "candidate" ).get<std::string>();
      c.recombined = jc.at( "recombined" ).get<std::string>();
      c.checked = set_from( jc.at( "checked" ) );
      c.violated = set_from( jc.at( "violated" ) );
      c.atoms = jc.at( "atoms" ).get<std::vector<EntityId>>();
      for ( const auto& l : jc.at( "justification" ) )
        c.chain.push_back( { l.at( "atom" ).get<std::string>(), l.at( "role" ).get<std::string>(),
                             l.at( "body" ).get<std::string>(), l.at( "provenance" ).get<std::string>() } );
      c.witness_states = jc.at( "witness" ).at( "states" ).get<std::vector<std::string>>();
      c.witness_actions = jc.at( "witness" ).at( "actions" ).get<std::vector<std::string>>();
      r.causes.push_back( std::move( c ) );
    }
    for ( const auto& w : j.at( "winning" ) )
      r.winning.push_back( { w.at( "strategy" ).get<std::string>(), set_from( w.at( "goals" ) ) } );
    for ( const auto& ref : j.at( "refinements" ) )
      r.refinements.push_back( { ref.at( "level" ).get<int>(), ref.at( "depth" ).get<int>(), ref.at( "ok" ).get<bool>() } );
    r.discarded = j.at( "discarded" ).get<std::vector<EntityId>>();
    for ( const auto& je : j.at( "trace" ) )
    {
      TraceEvent e;
      e.kind = je.at( "kind" ).get<std::string>();
      e.depth = je.at( "depth" ).get<int>();
      e.level = je.at( "level" ).get<int>();
      for ( const auto& f : je.at( "fields" ) )
        e.fields.emplace_back( f.at( 0 ).get<std::string>(), f.at( 1 ).get<std::string>() );
      r.trace.push_back( std::move( e ) );
    }
    return r;
  }
  catch ( const json::exception& e )
  {
    throw Error( std::string( "malformed report: " ) + e.what() );
  }
}

// long lists are cut in the text form; the JSON report keeps them whole
constexpr std::size_t text_list_limit = 8;

std::string render_text(const TraceReport& r)
{
  static const char* level_names[] = { "none", "C1 share information", "C2 reveal commitments",
                                       "C3 adopt goals", "C4 negotiate goals" };
  std::ostringstream os;
  os << "scenario " << ( r.scenario.empty() ? "-" : r.scenario ) << ", horizon " << r.horizon << ", " << r.mode
     << " strategies\n";
  os << "possible worlds:";
  for ( const auto& w : r.worlds )
    os << ' ' << w.name;
  os << '\n';
  if ( !r.degenerate.empty() )
  {
    os << "ignored (inconsistent on their own):";
    for ( const auto& a : r.degenerate )
      os << ' ' << a;
    os << '\n';
  }
  if ( !r.conflict )
    os << "no conflict: A has a winning strategy\n";
  for ( std::size_t i = 0; i < r.causes.size() && i < text_list_limit; ++i )
  {
    const auto& c = r.causes[i];
    os << "conflict in " << c.group << ": " << c.candidate << " fails " << to_string( c.violated ) << " against "
       << c.recombined << '\n';
    for ( const auto& l : c.chain )
    {
      os << "  " << l.role << ' ' << l.atom << ": " << l.body;
      if ( !l.provenance.empty() )
        os << "  (" << l.provenance << ")";
      os << '\n';
    }
    for ( std::size_t t = 0; t < c.witness_states.size(); ++t )
    {
      os << "  t=" << t << "  " << c.witness_states[t];
      if ( t < c.witness_actions.size() )
        os << "  | " << c.witness_actions[t];
      os << '\n';
    }
  }
  if ( r.causes.size() > text_list_limit )
    os << "... " << r.causes.size() - text_list_limit << " more conflicts in the JSON report\n";
  if ( r.conflict )
  {
    const auto lvl = r.level >= 0 && r.level <= 4 ? level_names[r.level] : "?";
    os << ( r.resolved ? "resolved at level " : "unresolved up to level " ) << r.level << " (" << lvl << ")\n";
  }
  if ( !r.discarded.empty() )
  {
    os << "discarded:";
    for ( const auto& a : r.discarded )
      os << ' ' << a;
    os << '\n';
  }
  if ( r.agreed )
    os << "agreed goals: " << to_string( *r.agreed ) << '\n';
  for ( std::size_t i = 0; i < r.winning.size() && i < text_list_limit; ++i )
    os << "winning " << r.winning[i].strategy << " achieves " << to_string( r.winning[i].goals ) << '\n';
  if ( r.winning.size() > text_list_limit )
    os << "... " << r.winning.size() - text_list_limit << " more winning strategies in the JSON report\n";
  return os.str();
}

} // namespace confres
