(function(){let e=document.createElement(`link`).relList;if(e&&e.supports&&e.supports(`modulepreload`))return;for(let e of document.querySelectorAll(`link[rel="modulepreload"]`))n(e);new MutationObserver(e=>{for(let t of e)if(t.type===`childList`)for(let e of t.addedNodes)e.tagName===`LINK`&&e.rel===`modulepreload`&&n(e)}).observe(document,{childList:!0,subtree:!0});function t(e){let t={};return e.integrity&&(t.integrity=e.integrity),e.referrerPolicy&&(t.referrerPolicy=e.referrerPolicy),t.credentials=e.crossOrigin===`use-credentials`?`include`:e.crossOrigin===`anonymous`?`omit`:`same-origin`,t}function n(e){if(e.ep)return;e.ep=!0;let n=t(e);fetch(e.href,n)}})();var e=class extends Error{status;constructor(e,t){super(t),this.status=e,this.name=`ApiError`}},t=class{base;fetcher;constructor(e=``,t=(e,t)=>fetch(e,t)){this.base=e,this.fetcher=t}async go(t,n,r){let i={method:t};r!==void 0&&(i.headers={"content-type":`application/json`},i.body=JSON.stringify(r));let a;try{a=await this.fetcher(this.base+n,i)}catch{throw new e(0,`service unreachable`)}if(!a.ok){let t=`${a.status} ${a.statusText}`;try{let e=await a.json();typeof e.detail==`string`&&(t=e.detail)}catch{}throw new e(a.status,t)}return await a.json()}datasets(){return this.go(`GET`,`/api/datasets`)}models(){return this.go(`GET`,`/api/models`)}segment(e,t){return this.go(`GET`,`/api/datasets/${encodeURIComponent(e)}/segments/${encodeURIComponent(t)}`)}createSession(e){return this.go(`POST`,`/api/sessions`,e)}session(e){return this.go(`GET`,`/api/sessions/${encodeURIComponent(e)}`)}postEvent(e,t,n){return this.go(`POST`,`/api/sessions/${encodeURIComponent(e)}/events`,{kind:t,payload:n})}grid(e){return this.go(`GET`,`/api/sessions/${encodeURIComponent(e)}/grid`)}record(e,t){return this.go(`POST`,`/api/sessions/${encodeURIComponent(e)}/record`,{comment:t})}};function n(e){let t=Math.round(e/10)*10;return Math.min(100,Math.max(0,t))}function r(e){let t=/^#s=(.+)$/.exec(e);return t?decodeURIComponent(t[1]):null}var i=class{api;store;constructor(e,t){this.api=e,this.store=t}async boot(){try{let[e,t]=await Promise.all([this.api.models(),this.api.datasets()]),n=t[0]??null;this.store.patch({models:e,dataset:n,pickedModel:e[0]?.model_id??``,pickedSegment:n?.segments[0]??``,error:``});let i=r(window.location.hash);i?await this.resumeSession(i):await this.loadSegment()}catch(e){this.fail(e)}}async resumeSession(e){try{let t=await this.api.session(e),n=await this.api.grid(e);this.store.patch({pickedModel:t.model_id,pickedSegment:t.segment_id,palette:t.color_mode===`colorblind`?`colorblind`:`default`,snapshot:t,grid:n,error:``}),await this.loadSegment()}catch(e){window.location.hash=``,await this.loadSegment(),this.fail(e)}}async loadSegment(){let{dataset:e,pickedSegment:t}=this.store.state;if(!(!e||!t))try{let n=await this.api.segment(e.dataset_id,t);this.store.patch({segment:n,error:``})}catch(e){this.fail(e)}}async startSession(e){let{pickedModel:t,pickedSegment:n,palette:r}=this.store.state;if(!(!t||!n)){this.store.patch({busy:!0});try{let i=await this.api.createSession({model_id:t,segment_id:n,rater_id:e||`anonymous`,color_mode:r}),a=await this.api.grid(i.session_id);window.location.hash=`s=${i.session_id}`,this.store.patch({snapshot:i,grid:a,error:``,notice:``,busy:!1})}catch(e){this.store.patch({busy:!1}),this.fail(e)}}}async sendEvent(e,t){let{snapshot:n,busy:r}=this.store.state;if(!(!n||r)){this.store.patch({busy:!0});try{let r=await this.api.postEvent(n.session_id,e,t),i=await this.api.grid(n.session_id);this.store.patch({snapshot:r,grid:i,error:``,busy:!1})}catch(e){this.store.patch({busy:!1}),this.fail(e)}}}addObject(e){return this.sendEvent(`add_object`,{raw_name:e})}removeObject(e){return this.sendEvent(`remove_object`,{name:e})}async clearObjects(){let e=this.store.state.snapshot;if(e)for(let t of[...e.selected_objects])await this.removeObject(t.name)}toggleCell(e,t){return this.sendEvent(`toggle`,{object:e,frame:t})}setFrameIncluded(e,t){return this.sendEvent(`frame_included`,{frame:e,included:t})}rate(e){return this.sendEvent(`rating`,{value:n(e)})}logHover(e,t){let n=this.store.state.snapshot;!n||n.status!==`active`||this.api.postEvent(n.session_id,`hover`,{object:e,frame:t}).catch(()=>void 0)}logZoom(e){let t=this.store.state.snapshot;!t||t.status!==`active`||this.api.postEvent(t.session_id,`zoom`,{frame:e}).catch(()=>void 0)}async recordAndReset(e){let t=this.store.state.snapshot;if(t){this.store.patch({busy:!0});try{await this.api.record(t.session_id,e.trim()||null),window.location.hash=``,this.store.patch({snapshot:null,grid:null,busy:!1,error:``,notice:`Response recorded.`})}catch(e){this.store.patch({busy:!1}),this.fail(e)}}}setPalette(e){this.store.patch({palette:e})}fail(t){let n=t instanceof e?t.message:`unexpected error, see console`;t instanceof e||console.error(t),this.store.patch({error:n,notice:``})}};function a(e,t={},...n){let r=document.createElement(e);for(let[e,n]of Object.entries(t))n!==!1&&(n===!0?r.setAttribute(e,``):r.setAttribute(e,String(n)));for(let e of n)r.append(e instanceof Node?e:document.createTextNode(e));return r}function o(e){for(;e.firstChild;)e.removeChild(e.firstChild)}var s=[`Multi-object recognition (video)`];function c(e,t,n){e.classList.add(`header-panel`);let r=()=>{o(e);let{models:r,dataset:c,snapshot:l,pickedModel:u,pickedSegment:d,palette:f,busy:p}=n.state,m=l!==null,h=a(`select`,{"data-testid":`model-select`});for(let e of r){let t=a(`option`,{value:e.model_id},e.model_id);t.selected=e.model_id===u,h.append(t)}h.disabled=m,h.addEventListener(`change`,()=>n.patch({pickedModel:h.value}));let g=a(`select`,{"data-testid":`task-select`});for(let e of s)g.append(a(`option`,{value:e},e));g.disabled=!0;let _=a(`select`,{"data-testid":`segment-select`});for(let e of c?.segments??[]){let t=a(`option`,{value:e},e);t.selected=e===d,_.append(t)}_.disabled=m,_.addEventListener(`change`,()=>{n.patch({pickedSegment:_.value}),t.loadSegment()});let v=a(`input`,{type:`text`,class:`rater-input`,placeholder:`rater id`,"data-testid":`rater-input`}),y=a(`button`,{type:`button`,class:`start-btn`,"data-testid":`start-btn`},`Start session`);y.disabled=m||p||!u||!d,y.addEventListener(`click`,()=>void t.startSession(v.value));let b=a(`input`,{type:`checkbox`,"data-testid":`palette-switch`});b.checked=f===`colorblind`,b.addEventListener(`change`,()=>t.setPalette(b.checked?`colorblind`:`default`)),e.append(a(`span`,{class:`brand`},`ikiwisi`),i(`Model`,h),i(`Task`,g),i(`Video`,_),v,y,a(`label`,{class:`palette-label`},b,` colorblind mode`))},i=(e,t)=>a(`label`,{class:`picker`},`${e}: `,t);n.subscribe(r),r()}function l(e){for(let e of document.querySelectorAll(`.frame-hl`))e.classList.remove(`frame-hl`);if(e!==null)for(let t of document.querySelectorAll(`[data-frame="${e}"]`))t.classList.add(`frame-hl`)}function u(e,t,n){e.classList.add(`heatmap-panel`),e.addEventListener(`click`,n=>{let r=n.target.closest(`td.cell`);if(!r||!e.contains(r))return;let i=r.dataset.object??``,a=Number(r.dataset.frame);t.toggleCell(i,a)}),e.addEventListener(`mouseover`,n=>{let r=n.target.closest(`td.cell`);if(!r||!e.contains(r))return;let i=Number(r.dataset.frame);l(i),t.logHover(r.dataset.object??``,i)}),e.addEventListener(`mouseleave`,()=>l(null));let r=()=>{o(e);let t=n.state.grid;if(!t)return;let{grid:r,modification_summary:i}=t,s=a(`table`,{class:`heatmap mode-${n.state.palette}`,"data-testid":`heatmap`}),c=a(`tr`,{},a(`th`,{class:`corner`}));for(let e of r.frames)c.append(a(`th`,{class:`frame-head`,"data-frame":e},String(e)));s.append(a(`thead`,{},c));let l=a(`tbody`);for(let e of r.rows){let t=a(`tr`,{class:e.is_spy?`spy`:``});t.append(a(`th`,{class:`obj-label`,scope:`row`},e.object)),e.shown.forEach((n,i)=>{let o=r.frames[i];t.append(a(`td`,{class:`cell`+(e.toggled[i]?` flipped`:``),"data-object":e.object,"data-frame":o,"data-on":n?`1`:`0`,role:`button`,title:`${e.object} / frame ${o}`}))}),l.append(t)}s.append(l);let u=r.frames.map(e=>i.counts[String(e)]??0),d=Math.max(1,...u),f=a(`div`,{class:`modbars`,"data-testid":`modbars`});u.forEach((e,t)=>{let n=a(`div`,{class:`modbar`,"data-frame":r.frames[t],"data-count":e},a(`span`,{class:`fill`,style:`height:${Math.round(e/d*100)}%`}),a(`span`,{class:`count`},String(e)));f.append(n)}),e.append(s,a(`div`,{class:`modbars-wrap`},a(`div`,{class:`modbars-title`},`Edits: ${i.total}`),f))};n.subscribe(r),r()}function d(e,t){return a(`div`,{class:`tile-art`,style:`background:hsl(${e*37%360} 35% 72%)`,title:t},a(`span`,{class:`frame-no`},String(e)))}function f(e,t){let n=a(`div`,{class:`zoom-overlay`,"data-testid":`zoom-overlay`},a(`div`,{class:`zoom-box`},a(`div`,{class:`zoom-title`},`Frame ${e}`),d(e,t),a(`div`,{class:`zoom-ref`},t),a(`button`,{class:`zoom-close`,type:`button`},`Close`)));n.addEventListener(`click`,e=>{let t=e.target;(t===n||t.closest(`.zoom-close`))&&(n.remove(),l(null))}),document.body.append(n)}function p(e,t,n){e.classList.add(`keyframe-panel`),e.addEventListener(`change`,e=>{let n=e.target;n.type!==`checkbox`||!n.dataset.frame||t.setFrameIncluded(Number(n.dataset.frame),n.checked)}),e.addEventListener(`click`,n=>{let r=n.target.closest(`.tile-art`);if(!r||!e.contains(r))return;let i=r.closest(`.tile`);if(!i)return;let a=Number(i.dataset.frame);l(a),t.logZoom(a),f(a,i.dataset.imageRef??``)});let r=()=>{o(e);let{segment:t,snapshot:r}=n.state;if(!t)return;let s=new Set(r?.included_frames??[]),c=r!==null&&r.status===`active`,l=a(`div`,{class:`keyframe-strip`});for(let e of t.frames){let t=a(`div`,{class:`tile`,"data-frame":e.index,"data-image-ref":e.image_ref},d(e.index,e.image_ref),a(`label`,{class:`include`},i(e.index,s,c),` use`));l.append(t)}e.append(a(`div`,{class:`panel-title`},`Keyframes — ${t.video_id}`),l)},i=(e,t,n)=>{let r=a(`input`,{type:`checkbox`,"data-frame":e});return r.checked=s(e,t,n),r.disabled=!n,r},s=(e,t,n)=>!n||t.has(e);n.subscribe(r),r()}function m(e,t,n,r=8){let i=t.startsWith(`*`),a=(i?t.slice(1):t).trim().toLowerCase();return a?e.filter(e=>e.toLowerCase().includes(a)&&!n.has(e)).slice(0,r).map(e=>i?`*${e}`:e):[]}function h(e,t,n){e.classList.add(`objects-panel`);let r=a(`input`,{type:`text`,class:`obj-input`,placeholder:`Add object… (*name for a spy)`,"data-testid":`obj-input`}),i=a(`div`,{class:`suggest`}),s=a(`div`,{class:`chips`,"data-testid":`chips`}),c=a(`button`,{type:`button`,class:`clear-all`,title:`Remove all objects`},`✕ all`),l=e=>{let n=e.trim();n&&(r.value=``,u(),t.addObject(n))};r.addEventListener(`input`,()=>u()),r.addEventListener(`keydown`,e=>{e.key===`Enter`&&l(r.value)}),i.addEventListener(`mousedown`,e=>{let t=e.target.closest(`.suggest-item`);t&&l(t.dataset.value??``)}),s.addEventListener(`click`,e=>{let n=e.target.closest(`.chip-x`);n&&t.removeObject(n.dataset.name??``)}),c.addEventListener(`click`,()=>void t.clearObjects());let u=()=>{o(i);let{dataset:e,snapshot:t}=n.state;if(!e||!t)return;let s=new Set(t.selected_objects.map(e=>e.name));for(let t of m(e.vocabulary,r.value,s))i.append(a(`div`,{class:`suggest-item`,"data-value":t},t))},d=()=>{let e=n.state.snapshot,t=e!==null&&e.status===`active`,i=e?.selected_objects??[],l=i.length>=16;r.disabled=!t||l,r.placeholder=l?`Limit of 16 objects reached`:`Add object… (*name for a spy)`,c.disabled=!t||i.length===0,o(s);let u=[...i.filter(e=>!e.is_spy),...i.filter(e=>e.is_spy)];for(let e of u)s.append(a(`span`,{class:e.is_spy?`chip spy`:`chip`,"data-name":e.name},e.is_spy?`*${e.name}`:e.name,a(`button`,{type:`button`,class:`chip-x`,"data-name":e.name,title:`Remove ${e.name}`},`×`)))};e.append(a(`div`,{class:`panel-title`},`Objects`),a(`div`,{class:`obj-entry`},r,c),i,s),n.subscribe(d),d()}function g(e,t,r){e.classList.add(`rating-panel`);let i=a(`input`,{type:`range`,min:0,max:100,step:10,"data-testid":`rating-slider`}),o=a(`span`,{class:`rating-readout`},`—`),s=a(`textarea`,{class:`comment-box`,placeholder:`Observations (optional)`,"data-testid":`comment-box`}),c=a(`button`,{type:`button`,class:`record-btn`,"data-testid":`record-btn`},`Record response and reset`);i.addEventListener(`change`,()=>{t.rate(n(Number(i.value)))}),c.addEventListener(`click`,()=>{t.recordAndReset(s.value).then(()=>{r.state.error||(s.value=``)})});let l=()=>{let e=r.state.snapshot,t=e!==null&&e.status===`active`;i.disabled=!t,s.disabled=!t,c.disabled=!t||e?.rating===null||r.state.busy,e?.rating==null?(i.value=`50`,o.textContent=`—`):(i.value=String(e.rating),o.textContent=`${e.rating}%`)};e.append(a(`div`,{class:`panel-title`},`Rating`),a(`div`,{class:`slider-row`},a(`span`,{class:`slider-end`},`random`),i,a(`span`,{class:`slider-end`},`perfect`),o),s,c),r.subscribe(l),l()}function _(e,t){e.classList.add(`status-line`);let n=()=>{o(e);let{error:n,notice:r}=t.state;n?e.append(a(`span`,{class:`error`,role:`alert`},n)):r&&e.append(a(`span`,{class:`notice`},r))};t.subscribe(n),n()}function v(){return{models:[],dataset:null,pickedModel:``,pickedSegment:``,segment:null,snapshot:null,grid:null,palette:`default`,busy:!1,error:``,notice:``}}var y=class{state=v();listeners=[];subscribe(e){this.listeners.push(e)}patch(e){Object.assign(this.state,e);for(let e of this.listeners)e()}};function b(e,t){let n=new y,r=new i(t,n),o=a(`header`,{id:`panel-header`}),s=a(`div`,{id:`panel-status`}),l=a(`section`,{id:`panel-objects`}),d=a(`section`,{id:`panel-keyframes`}),f=a(`section`,{id:`panel-heatmap`}),m=a(`section`,{id:`panel-rating`});return e.append(o,s,a(`main`,{class:`board`},l,d,f,m)),c(o,r,n),_(s,n),h(l,r,n),p(d,r,n),u(f,r,n),g(m,r,n),r}var x=document.getElementById(`app`);x&&b(x,new t).boot();