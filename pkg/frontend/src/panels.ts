// Detail and event panels. Event highlighting slices the post text with the
// server's char offsets, so the highlighted substring always equals the
// mention's surface form.

import type { CommunityOut, MentionOut, PostEventsOut, UserSusOut } from './api.js';

export function renderUserDetail(panel: HTMLElement, info: UserSusOut): void {
  panel.replaceChildren();
  const title = document.createElement('h3');
  title.textContent = info.user_id;
  const community = document.createElement('p');
  community.className = 'detail-community';
  community.textContent = `community: ${info.community ?? 'unassigned'}`;
  const score = document.createElement('p');
  score.className = 'detail-score';
  score.textContent =
    `susceptibility ${info.score.value.toFixed(3)} (${info.score.percentage.toFixed(1)}%)`;
  panel.append(title, community, score);
}

export function renderCommunityDetail(panel: HTMLElement, info: CommunityOut): void {
  panel.replaceChildren();
  const title = document.createElement('h3');
  title.textContent = `${info.community_id} — ${info.member_count} members`;
  panel.appendChild(title);
  const mean = document.createElement('p');
  mean.className = 'detail-score';
  mean.textContent = info.mean_susceptibility
    ? `mean susceptibility ${info.mean_susceptibility.value.toFixed(3)} ` +
      `(${info.mean_susceptibility.percentage.toFixed(1)}%)`
    : 'mean susceptibility unavailable (no model loaded)';
  panel.appendChild(mean);

  const membersTitle = document.createElement('h4');
  membersTitle.textContent = 'top influence';
  panel.appendChild(membersTitle);
  const list = document.createElement('ol');
  list.className = 'member-list';
  for (const member of info.top_influence.slice(0, 10)) {
    const item = document.createElement('li');
    item.textContent =
      `${member.user_id} · I ${member.influence.toFixed(4)} · P ${member.passivity.toFixed(4)}`;
    list.appendChild(item);
  }
  panel.appendChild(list);

  if (info.opinions.length) {
    const opinionTitle = document.createElement('h4');
    opinionTitle.textContent = 'representative opinions';
    panel.appendChild(opinionTitle);
    for (const opinion of info.opinions.slice(0, 5)) {
      const block = document.createElement('blockquote');
      block.className = 'opinion';
      block.textContent = `“${opinion.text}” — ${opinion.like_count} likes`;
      panel.appendChild(block);
    }
  }
}

export function highlightSegments(
  text: string,
  mentions: MentionOut[],
): { text: string; highlight: boolean }[] {
  const bounds = mentions
    .map((m) => ({ start: m.trigger.start, end: m.trigger.end }))
    .sort((a, b) => a.start - b.start);
  const segments: { text: string; highlight: boolean }[] = [];
  let cursor = 0;
  for (const b of bounds) {
    if (b.start > cursor) segments.push({ text: text.slice(cursor, b.start), highlight: false });
    segments.push({ text: text.slice(b.start, b.end), highlight: true });
    cursor = b.end;
  }
  if (cursor < text.length) segments.push({ text: text.slice(cursor), highlight: false });
  return segments;
}

export function renderEventPanel(panel: HTMLElement, events: PostEventsOut): void {
  panel.replaceChildren();
  const title = document.createElement('h3');
  title.textContent = `events in ${events.post_id}`;
  panel.appendChild(title);

  if (!events.mentions.length) {
    const empty = document.createElement('p');
    empty.className = 'empty-state';
    empty.textContent = 'no events detected';
    panel.appendChild(empty);
    return;
  }

  const textBlock = document.createElement('p');
  textBlock.className = 'post-text';
  for (const segment of highlightSegments(events.text, events.mentions)) {
    if (segment.highlight) {
      const mark = document.createElement('mark');
      mark.className = 'trigger';
      mark.textContent = segment.text;
      textBlock.appendChild(mark);
    } else {
      textBlock.appendChild(document.createTextNode(segment.text));
    }
  }
  panel.appendChild(textBlock);

  for (const mention of events.mentions) {
    const row = document.createElement('div');
    row.className = 'mention';
    const badge = document.createElement('span');
    badge.className = 'type-badge';
    badge.textContent = mention.event_type;
    row.appendChild(badge);
    const table = document.createElement('table');
    table.className = 'role-table';
    for (const arg of mention.arguments) {
      const tr = document.createElement('tr');
      const role = document.createElement('td');
      role.textContent = arg.role;
      const value = document.createElement('td');
      value.textContent = arg.text;
      tr.append(role, value);
      table.appendChild(tr);
    }
    row.appendChild(table);
    panel.appendChild(row);
  }
}
