#pragma once

#include <string_view>

namespace forge::prompts {

// Prompt templates sent to the generative services, kept byte-for-byte.
// Templates with {slot} placeholders are rendered with format semantics
// (render_template): {{ and }} unescape to literal braces. The scene-analysis
// and particle-classifier prompts are sent as-is and never rendered.

inline constexpr std::string_view kSceneAnalysisPrompt = R"PROMPT(Your task is to analyze a small set of photos from a single real-world event and convert them into structured scene descriptions.

You will receive:
1. One or more original photos from the same event.
2. Optional masked crops for specific elements extracted from the photos.
3. Optional metadata such as timestamp, GPS, latitude, longitude, altitude, or location estimates.

Your goal is not to produce a generic caption.
Your goal is to infer scene elements that are useful for reconstructing a dynamic 3D diorama for memory recall.

The output must be grounded in visible evidence.
You may make conservative contextual inferences only when they are strongly supported by the images.
Do not invent salient elements that are not visible or strongly implied.

Analyze the scene using the following five cue layers:
1. object-related cues
2. human-related cues
3. geographical cues
4. lighting-related cues
5. particle-related cues

For each detected element, infer:
- semantic label
- concise physical description
- likely real-world role in the scene
- motion or animation state if applicable
- approximate size category
- confidence score
- which image(s) support the inference

Important rules:
- Use the masked image to identify the target element precisely.
- Use the original image to recover context, scale, and surroundings.
- Prefer concrete nouns and observable actions.
- Keep descriptions short and operational for downstream generation.
- Avoid subjective interpretation unless it directly affects reconstruction, such as "crowded", "sunset", "light rain".
- Do not mention camera properties, composition, or photographic style unless they indicate actual environmental conditions.
- If uncertain, use "unknown" or lower confidence rather than guessing.
- If an element is static, set animation to "static".
- If an element is dynamic, choose a simple verb phrase such as "walking", "running", "flying", "driving", "floating", "waving", "falling", "flowing".
- Infer weather or atmosphere only if visible evidence exists, such as clouds, snow, rain, fog, wet ground, haze, blowing trees, umbrellas.
- Infer lighting from visible environmental evidence, such as sun direction, shadows, sunset tones, streetlights, decorative illumination, reflections, dark roadsides.

Output format:
Return a single valid JSON object only.
No markdown.
No explanations outside JSON.

JSON schema:

{
  "event_summary": {
    "scene_type": "string",
    "location_context": "string",
    "environment": "indoor | outdoor | mixed | unknown",
    "time_of_day": "day | night | sunset | sunrise | overcast_day | unknown",
    "weather": "clear | cloudy | rainy | snowy | foggy | windy | mixed | unknown",
    "overall_description": "string"
  },
  "objects": {
    "object01": {
      "images": ["string"],
      "label": "string",
      "description": "string",
      "animation": "string",
      "size": "small | medium | large | unknown",
      "confidence": 0.0
    }
  },
  "humans": {
    "human01": {
      "images": ["string"],
      "count_type": "individual | group",
      "description": "string",
      "animation": "string",
      "pose_or_activity": "string",
      "confidence": 0.0
    }
  },
  "geography": {
    "geo01": {
      "images": ["string"],
      "type": "road | beach | river | ocean | mountain | snowfield | grass | urban_block | park | bridge | station | other",
      "description": "string",
      "dynamic_state": "static | flowing | waving | unknown",
      "confidence": 0.0
    }
  },
  "lighting": {
    "light01": {
      "images": ["string"],
      "type": "sunlight | sunset | streetlight | decorative_light | indoor_light | overcast_light | unknown",
      "description": "string",
      "intensity": "low | medium | high | unknown",
      "direction_or_area": "string",
      "confidence": 0.0
    }
  },
  "particles": {
    "particle01": {
      "images": ["string"],
      "type": "rain | snow | fog | cloud | mist | falling_leaves | blossoms | none | unknown",
      "description": "string",
      "intensity": "low | medium | high | unknown",
      "confidence": 0.0
    }
  }
}

Additional constraints:
- Include only elements relevant for diorama reconstruction.
- Merge duplicates across images when they refer to the same semantic element type and event context.
- If no element is found for a layer, return an empty object for that layer.
- Keep the JSON compact and deterministic.
- Use English for all labels and values.)PROMPT";

inline constexpr std::string_view kLocationEstimatePrompt = R"PROMPT(You are an assistant that estimates one single GPS location from multiple images.

Analyze all provided images together and infer one best shared location.

Use visual cues such as terrain, roads, buildings, vegetation, coastline, mountains, and overall landscape context.
Also estimate elevation in meters.

Input images:
{joined}

Return JSON only.
Do not return markdown.
Do not add explanations.
Do not add extra keys.
Use exactly this format:

{{
  "results": {{
    "latitude": 0.0,
    "longitude": 0.0,
    "height": 0.0
  }}
}})PROMPT";

inline constexpr std::string_view kGeoTexturePrompt = R"PROMPT(Generate a stylized top-down surface-cover texture for the geographical layer of a miniature memory diorama.

Scene context:
{scene_summary}

Surface cover type:
{surface_cover_type}

Visual characteristics:
{surface_cover_description}

Style requirements:
- the texture should cover the overall terrain surface of the diorama
- top-down view
- stylized, soft, and visually cohesive with a handcrafted memory diorama aesthetic
- preserve the visual identity of the surface cover material
- suitable for overlaying across the terrain as a global geographical texture
- visually readable at small scale
- no text, labels, icons, figures, buildings, or perspective objects
- no strong directional shadows or dramatic lighting
- texture only

Output a single square texture image.)PROMPT";

inline constexpr std::string_view kParticleTexturePrompt = R"PROMPT(Generate a stylized texture asset for animated environmental particles in a miniature memory diorama.

Scene context:
{scene_summary}

Particle type:
{particle_type}

Desired motion impression:
{motion_description}

Style requirements:
- soft, lightweight, semi-transparent appearance
- visually simple and clean
- suitable for repeated use as a particle texture in animation
- consistent with a handcrafted, memory-inspired diorama style
- no background scene
- isolated texture asset only
- no text, symbols, or decorative framing
- should remain readable when duplicated many times in motion

Output a single square texture image with a plain clean background or transparent-style appearance.)PROMPT";

inline constexpr std::string_view kPositionAnnotationPrompt = R"PROMPT(Input format:
- Image 1 is always the target diorama map canvas.
- Image 2+ are additional reference photos.

Task:
1) Apply a grayscale (B&W) filter to Image 1 only.
2) Keep black/masked regions in Image 1 unchanged.
3) Draw exactly one solid red vertex (dot) at the center location of {object} on Image 1.

Hard constraints:
- Draw only on Image 1. Do not draw on any reference images.
- Draw exactly one red vertex (#FF0000). No lines, labels, or extra marks.
- Keep Image 1 framing and resolution unchanged.
- Return one edited image based on Image 1.)PROMPT";

inline constexpr std::string_view kAreaAnnotationPrompt = R"PROMPT(
Input format:
- Image 1 is always the target diorama map canvas.
- Image 2+ are additional reference photos.

Task:
1) Apply a full grayscale (B&W) filter to Image 1 only.
2) Keep black/masked regions in Image 1 unchanged.
3) On Image 1, draw one closed polygon for the {object} area:
   - Red vertices (#FF0000)
   - Red connecting lines (#FF0000)

Hard constraints:
- Draw only on Image 1. Do not draw on any reference images.
- Draw exactly one closed polygon; no open lines and no extra polygons.
- Use only red lines and red vertices. No labels or extra marks.
- Keep Image 1 framing and resolution unchanged.
- Return one edited image based on Image 1.)PROMPT";

inline constexpr std::string_view kRouteAnnotationPrompt = R"PROMPT(Input format:
- Image 1 is always the target diorama map canvas.
- Image 2+ are additional reference photos.

Task:
1) Apply a grayscale (B&W) filter to Image 1 only.
2) Overlay one movement path for {object} on Image 1.

Strict drawing rules:
- Use ONLY Red #FF0000 for the path and red vertices.
- Use ONLY Blue #0000FF for the start marker.
- Path line width: 8 pixels.
- Place one blue dot at the start, overlapping the first red path segment.
- Add red vertices at key turning or altitude-change points.
- Draw exactly one simple connected non-loop path (no forks, no branches).

Hard constraints:
- Draw only on Image 1. Do not draw on any reference images.
- No gradients, shadows, transparency, labels, or extra marks.
- Keep Image 1 framing and resolution unchanged.
- Return one edited image based on Image 1.)PROMPT";

inline constexpr std::string_view kParticleClassifierPrompt = R"PROMPT(You are a visual classifier for a Unity environment effects system.

Analyze the uploaded photo and decide which effects should be enabled, along with their intensity level.

Effect definitions:

rain: rainy, wet, stormy, or associated with rainfall
snow: snow, ice, or winter conditions
fog: misty, hazy, low-visibility, or foggy atmosphere
cloud: cloudy, overcast, or cloud-heavy sky
blossom: flowers, petals, blooming trees, or spring atmosphere

Rules:

Each effect must include:
"enabled": true or false
"intensity": one of ["low", "medium", "high"]

If "enabled" is false, intensity must be "low"

Multiple effects can be true at the same time

Base decisions only on visible evidence and overall atmosphere

Do not explain your reasoning

Output valid JSON only

Return exactly this structure:

{
"effects": {
"rain": { "enabled": false, "intensity": "low" },
"snow": { "enabled": false, "intensity": "low" },
"fog": { "enabled": false, "intensity": "low" },
"cloud": { "enabled": false, "intensity": "low" },
"blossom": { "enabled": false, "intensity": "low" }
}
})PROMPT";

}  // namespace forge::prompts
